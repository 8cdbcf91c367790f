#pragma once

// Double-row transfer matrix t(u) = str_0{ K+(u) T(u) K-(u) That(u) }.
//
// Built column by column: each physical basis vector is tensored with an
// auxiliary state, pushed through the 2L R-matrices and the two K-matrices,
// and projected back with the supertrace sign. Values and u-derivatives are
// propagated together, so t'(u) is exact.

#include <optional>
#include <vector>

#include "tjlab/algebra/basis.hpp"
#include "tjlab/algebra/boundary.hpp"
#include "tjlab/algebra/graded.hpp"

namespace tjlab {

inline constexpr int kMaxTransferSites = 8;

struct TransferValue {
    MatrixXc value;
    MatrixXc derivative;
};

namespace detail {

struct SwapTable {
    std::vector<std::int64_t> target;
    std::vector<double> sign;
};

// Tables for Pi_{0j}, j = 1..L, on the (L+1)-factor space (aux first).
inline std::vector<SwapTable> aux_swap_tables(int L) {
    const int factors = L + 1;
    const auto d = ipow(kLocalDim, factors);
    std::vector<SwapTable> tables(static_cast<std::size_t>(L + 1));
    for (int j = 1; j <= L; ++j) {
        auto& t = tables[static_cast<std::size_t>(j)];
        t.target.resize(static_cast<std::size_t>(d));
        t.sign.resize(static_cast<std::size_t>(d));
        for (std::int64_t c = 0; c < d; ++c) {
            auto [r, s] = graded_swap(c, 0, j, factors);
            t.target[static_cast<std::size_t>(c)] = r;
            t.sign[static_cast<std::size_t>(c)] = s;
        }
    }
    return tables;
}

struct Dual {
    VectorXc x;
    VectorXc dx;
};

// (x, dx) -> (R x, R dx + R' x) with R = u + Pi and R' = 1.
inline void apply_r(const SwapTable& t, cplx u, Dual& s, Dual& scratch) {
    const auto d = s.x.size();
    scratch.x = u * s.x;
    scratch.dx = u * s.dx + s.x;
    for (Eigen::Index c = 0; c < d; ++c) {
        const auto r = t.target[static_cast<std::size_t>(c)];
        const double sg = t.sign[static_cast<std::size_t>(c)];
        scratch.x(r) += sg * s.x(c);
        scratch.dx(r) += sg * s.dx(c);
    }
    std::swap(s, scratch);
}

// Auxiliary digit is the most significant one: blocks of size 3^L.
inline void apply_aux(const Matrix3c& k, const Matrix3c& dk, Eigen::Index block, Dual& s, Dual& scratch) {
    scratch.x.setZero(s.x.size());
    scratch.dx.setZero(s.x.size());
    for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 3; ++a) {
            if (k(b, a) == cplx(0.0) && dk(b, a) == cplx(0.0)) continue;
            scratch.x.segment(b * block, block) += k(b, a) * s.x.segment(a * block, block);
            scratch.dx.segment(b * block, block) +=
                k(b, a) * s.dx.segment(a * block, block) + dk(b, a) * s.x.segment(a * block, block);
        }
    std::swap(s, scratch);
}

}  // namespace detail

/// t(u) and t'(u) on the given basis (full space or a particle-number sector;
/// t(u) conserves the particle number).
inline TransferValue transfer_with_derivative(cplx u, const BoundaryParams& p, const FockBasis& basis) {
    validate(p);
    const int L = basis.sites();
    if (L < 1 || L > kMaxTransferSites)
        throw DomainError("dense transfer matrix limited to 1 <= L <= " + std::to_string(kMaxTransferSites));
    const auto tables = detail::aux_swap_tables(L);
    const Eigen::Index block = ipow(kLocalDim, L);
    const Eigen::Index total = kLocalDim * block;
    const Matrix3c km = build_k_minus(u, p), dkm = k_minus_slope(p);
    const Matrix3c kp = build_k_plus(u, p), dkp = k_plus_slope(p);
    const auto n = basis.size();

    TransferValue out{MatrixXc::Zero(n, n), MatrixXc::Zero(n, n)};
    detail::Dual s, scratch;
    for (std::int64_t col = 0; col < n; ++col) {
        for (int a = 0; a < 3; ++a) {
            s.x.setZero(total);
            s.dx.setZero(total);
            s.x(a * block + basis.code(col)) = 1.0;
            for (int j = L; j >= 1; --j) detail::apply_r(tables[static_cast<std::size_t>(j)], u, s, scratch);
            detail::apply_aux(km, dkm, block, s, scratch);
            for (int j = 1; j <= L; ++j) detail::apply_r(tables[static_cast<std::size_t>(j)], u, s, scratch);
            detail::apply_aux(kp, dkp, block, s, scratch);
            const double sg = sign_of(grade(a));
            for (std::int64_t row = 0; row < n; ++row) {
                const auto idx = a * block + basis.code(row);
                out.value(row, col) += sg * s.x(idx);
                out.derivative(row, col) += sg * s.dx(idx);
            }
        }
    }
    return out;
}

/// Full-space t(u) as a graded operator on L factors.
inline GradedOperator build_transfer_matrix(cplx u, int L, const BoundaryParams& p) {
    if (L < 1 || L > kMaxTransferSites)
        throw DomainError("dense transfer matrix limited to 1 <= L <= " + std::to_string(kMaxTransferSites));
    FockBasis full(L);
    return {L, transfer_with_derivative(u, p, full).value};
}

inline MatrixXc transfer_matrix(cplx u, const BoundaryParams& p, const FockBasis& basis) {
    return transfer_with_derivative(u, p, basis).value;
}

}  // namespace tjlab
