#pragma once

// Z2-graded tensor algebra over C^3 with parities (0, 1, 1).
//
// Basis index of an n-factor product: sum_k d_k 3^(n-1-k), factor 0 is the
// most significant digit. Local states are 0 = hole (even), 1 = down, 2 = up
// (odd). Operators acting on several factors carry the graded signs of the
// factor ordering 0 < 1 < ... < n-1.

#include <array>
#include <utility>
#include <vector>

#include "tjlab/algebra/boundary.hpp"
#include "tjlab/common.hpp"

namespace tjlab {

inline constexpr int kLocalDim = 3;
inline constexpr std::array<int, 3> kParity{0, 1, 1};

inline int grade(int local) { return kParity[static_cast<std::size_t>(local)]; }
inline int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }

/// Dense operator on a product of graded C^3 factors.
class GradedOperator {
   public:
    GradedOperator() = default;
    GradedOperator(int factors, MatrixXc entries) : factors_(factors), entries_(std::move(entries)) {
        const auto d = ipow(kLocalDim, factors_);
        if (entries_.rows() != d || entries_.cols() != d)
            throw DomainError("graded operator dimension must be 3^factors");
    }

    static GradedOperator identity(int factors) {
        const auto d = ipow(kLocalDim, factors);
        return {factors, MatrixXc::Identity(d, d)};
    }

    int factors() const { return factors_; }
    Eigen::Index dim() const { return entries_.rows(); }
    const MatrixXc& entries() const { return entries_; }
    MatrixXc& entries() { return entries_; }

    /// Total Grassmann parity of every basis index.
    std::vector<int> parities() const {
        std::vector<int> out(static_cast<std::size_t>(dim()));
        for (Eigen::Index i = 0; i < dim(); ++i) {
            int p = 0;
            auto x = i;
            for (int k = 0; k < factors_; ++k, x /= kLocalDim) p += grade(static_cast<int>(x % kLocalDim));
            out[static_cast<std::size_t>(i)] = p & 1;
        }
        return out;
    }

    GradedOperator operator*(const GradedOperator& o) const {
        return {factors_, entries_ * o.entries_};
    }
    GradedOperator operator+(const GradedOperator& o) const {
        return {factors_, entries_ + o.entries_};
    }
    GradedOperator operator-(const GradedOperator& o) const {
        return {factors_, entries_ - o.entries_};
    }

   private:
    int factors_ = 0;
    MatrixXc entries_;
};

inline int digit(std::int64_t index, int k, int factors) {
    return static_cast<int>((index / ipow(kLocalDim, factors - 1 - k)) % kLocalDim);
}

/// Two-factor graded tensor product with the sign rule
/// [A (x) B]^{a2 b2}_{a1 b1} = (-1)^{p(a2) p(b2)} A^{a2}_{a1} B^{b2}_{b1},
/// rows (a1, b1) and columns (a2, b2).
inline MatrixXc graded_tensor(const Matrix3c& a, const Matrix3c& b) {
    MatrixXc out(9, 9);
    for (int a1 = 0; a1 < 3; ++a1)
        for (int b1 = 0; b1 < 3; ++b1)
            for (int a2 = 0; a2 < 3; ++a2)
                for (int b2 = 0; b2 < 3; ++b2)
                    out(3 * a1 + b1, 3 * a2 + b2) =
                        double(sign_of(grade(a2) * grade(b2))) * a(a1, a2) * b(b1, b2);
    return out;
}

inline Matrix3c matrix_unit(int row, int col) {
    Matrix3c e = Matrix3c::Zero();
    e(row, col) = 1.0;
    return e;
}

/// Graded permutation on two factors, entries (-1)^{p(g) p(d)} delta_{a,d} delta_{b,g}.
inline MatrixXc graded_permutation() {
    MatrixXc pi = MatrixXc::Zero(9, 9);
    for (int g = 0; g < 3; ++g)
        for (int d = 0; d < 3; ++d) pi(3 * d + g, 3 * g + d) = double(sign_of(grade(g) * grade(d)));
    return pi;
}

/// R(u) = u Id + Pi on two factors.
inline GradedOperator build_r_matrix(cplx u) {
    MatrixXc r = graded_permutation();
    r.diagonal().array() += u;
    return {2, std::move(r)};
}

/// Image of basis index under the graded swap of factors i < j, with its sign.
/// The sign collects p_i p_j plus the crossings of both moved states over the
/// factors strictly between them.
inline std::pair<std::int64_t, int> graded_swap(std::int64_t index, int i, int j, int factors) {
    if (i > j) std::swap(i, j);
    const int di = digit(index, i, factors);
    const int dj = digit(index, j, factors);
    int between = 0;
    for (int k = i + 1; k < j; ++k) between += grade(digit(index, k, factors));
    const int exponent = grade(di) * grade(dj) + (grade(di) + grade(dj)) * between;
    const auto wi = ipow(kLocalDim, factors - 1 - i);
    const auto wj = ipow(kLocalDim, factors - 1 - j);
    const std::int64_t swapped = index + (dj - di) * wi + (di - dj) * wj;
    return {swapped, sign_of(exponent)};
}

/// Pi_{ij} embedded in an n-factor space.
inline GradedOperator embed_permutation(int factors, int i, int j) {
    const auto d = ipow(kLocalDim, factors);
    MatrixXc m = MatrixXc::Zero(d, d);
    for (std::int64_t c = 0; c < d; ++c) {
        auto [r, s] = graded_swap(c, i, j, factors);
        m(r, c) = double(s);
    }
    return {factors, std::move(m)};
}

/// R_{ij}(u) embedded in an n-factor space; R_{ij} = R_{ji}.
inline GradedOperator embed_r(int factors, int i, int j, cplx u) {
    auto r = embed_permutation(factors, i, j);
    r.entries().diagonal().array() += u;
    return r;
}

inline bool is_even(const Matrix3c& m, double tol = 0.0) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (grade(r) != grade(c) && std::abs(m(r, c)) > tol) return false;
    return true;
}

/// Even local operator acting on factor k; no graded signs arise.
inline GradedOperator embed_local(int factors, int k, const Matrix3c& m) {
    if (!is_even(m)) throw DomainError("embed_local expects a parity-preserving matrix");
    const auto d = ipow(kLocalDim, factors);
    const auto w = ipow(kLocalDim, factors - 1 - k);
    MatrixXc out = MatrixXc::Zero(d, d);
    for (std::int64_t c = 0; c < d; ++c) {
        const int dc = digit(c, k, factors);
        for (int dr = 0; dr < 3; ++dr) {
            if (m(dr, dc) == cplx(0.0)) continue;
            out(c + (dr - dc) * w, c) += m(dr, dc);
        }
    }
    return {factors, std::move(out)};
}

inline cplx supertrace(const Matrix3c& m) {
    cplx s = 0.0;
    for (int b = 0; b < 3; ++b) s += double(sign_of(grade(b))) * m(b, b);
    return s;
}

/// Partial supertrace over factor 0: sum_b (-1)^{p(b)} <b| C |b>.
inline GradedOperator supertrace_first(const GradedOperator& c) {
    const int rest = c.factors() - 1;
    const auto d = ipow(kLocalDim, rest);
    MatrixXc out = MatrixXc::Zero(d, d);
    for (int b = 0; b < 3; ++b)
        out += double(sign_of(grade(b))) * c.entries().block(b * d, b * d, d, d);
    return {rest, std::move(out)};
}

}  // namespace tjlab
