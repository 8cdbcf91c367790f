#pragma once

#include <vector>

#include <Eigen/LU>
#include <Eigen/Sparse>

#include "tjlab/algebra/basis.hpp"
#include "tjlab/algebra/boundary.hpp"
#include "tjlab/algebra/transfer.hpp"

namespace tjlab {

using SparseXc = Eigen::SparseMatrix<cplx>;

inline constexpr int kMaxHamiltonianSites = 10;

/// A Hermitian operator on a (possibly particle-number restricted) basis.
struct SparseOperator {
    FockBasis basis;
    SparseXc matrix;

    MatrixXc dense() const { return MatrixXc(matrix); }
};

namespace detail {

// Graded index 2 carries spin down and index 3 spin up: with the K-matrices
// above this is the labelling under which the boundary fields come out as
// given by map_boundary_params.
enum Local : int { kHole = 0, kDown = 1, kUp = 2 };

inline void add_boundary(const FockBasis& b, std::int64_t col, int site, double chi,
                         const std::array<double, 3>& h, std::vector<Eigen::Triplet<cplx>>& out) {
    const auto code = b.code(col);
    const int s = b.local(code, site);
    if (s == kHole) return;
    // 2 h.S in the (up, down) block is h.sigma.
    const cplx diag = chi + (s == kUp ? h[2] : -h[2]);
    out.emplace_back(col, col, diag);
    const int flipped = s == kUp ? kDown : kUp;
    const cplx off = s == kUp ? cplx(h[0], h[1]) : cplx(h[0], -h[1]);
    const auto row = b.index(b.with_local(code, site, flipped));
    out.emplace_back(row, col, off);
}

}  // namespace detail

/// Direct second-quantized Hamiltonian with t = 1, J = 2. Fermionic order is
/// site 1 < site 2 < ...; nearest-neighbour hops pick up no sign because the
/// hopping electron never passes an occupied site.
inline SparseOperator build_hamiltonian(int L, const BoundaryFields& f, std::optional<int> particles = std::nullopt) {
    using namespace detail;
    if (L < 2 || L > kMaxHamiltonianSites)
        throw DomainError("Hamiltonian limited to 2 <= L <= " + std::to_string(kMaxHamiltonianSites));
    FockBasis b(L, particles);
    constexpr double t = 1.0, J = 2.0;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::int64_t col = 0; col < b.size(); ++col) {
        const auto code = b.code(col);
        for (int s = 0; s + 1 < L; ++s) {
            const int a = b.local(code, s), c = b.local(code, s + 1);
            if (a == kHole && c != kHole) {
                const auto next = b.with_local(b.with_local(code, s, c), s + 1, kHole);
                trip.emplace_back(b.index(next), col, -t);
            } else if (a != kHole && c == kHole) {
                const auto next = b.with_local(b.with_local(code, s, kHole), s + 1, a);
                trip.emplace_back(b.index(next), col, -t);
            } else if (a != kHole && c != kHole) {
                // J (Sz Sz - 1/4) on the diagonal, J/2 (S+S- + S-S+) flips.
                const double szsz = a == c ? 0.25 : -0.25;
                trip.emplace_back(col, col, J * (szsz - 0.25));
                if (a != c) {
                    const auto next = b.with_local(b.with_local(code, s, c), s + 1, a);
                    trip.emplace_back(b.index(next), col, J / 2.0);
                }
            }
        }
        add_boundary(b, col, 0, f.chi_1, f.h_1, trip);
        add_boundary(b, col, L - 1, f.chi_L, f.h_L, trip);
    }
    SparseXc m(b.size(), b.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return {std::move(b), std::move(m)};
}

inline SparseOperator number_operator(const FockBasis& b) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::int64_t i = 0; i < b.size(); ++i) trip.emplace_back(i, i, double(b.count_particles(b.code(i))));
    SparseXc m(b.size(), b.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return {b, std::move(m)};
}

inline SparseOperator total_sz(const FockBasis& b) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::int64_t i = 0; i < b.size(); ++i) {
        double sz = 0.0;
        for (int s = 0; s < b.sites(); ++s) {
            const int loc = b.local(b.code(i), s);
            sz += loc == detail::kUp ? 0.5 : (loc == detail::kDown ? -0.5 : 0.0);
        }
        trip.emplace_back(i, i, sz);
    }
    SparseXc m(b.size(), b.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return {b, std::move(m)};
}

/// Additive constant tying the logarithmic derivative of t(u) to H.
inline double transfer_offset(const BoundaryParams& p, int L) {
    return 1.0 / (2.0 * p.xi) - (1.0 - 2.0 * p.xi_prime) / (2.0 * (1.0 - p.xi_prime)) + (L - 1);
}

enum class DerivativeMode { exact, central_difference };

struct TransferHamiltonianOptions {
    DerivativeMode mode = DerivativeMode::exact;
    double step = 1e-6;
    bool include_chain_constant = true;  // the L - 1 term; off only for mutation tests
};

/// H = -(1/2) t'(0) t(0)^{-1} + 1/(2 xi) - (1 - 2 xi')/(2 (1 - xi')) - 2 N + L - 1.
inline MatrixXc hamiltonian_from_transfer(int L, const BoundaryParams& p, std::optional<int> particles = std::nullopt,
                                          const TransferHamiltonianOptions& opt = {}) {
    if (L < 1 || L > 6) throw DomainError("hamiltonian_from_transfer limited to L <= 6");
    validate(p);
    FockBasis b(L, particles);
    MatrixXc t0, dt0;
    if (opt.mode == DerivativeMode::exact) {
        auto tv = transfer_with_derivative(0.0, p, b);
        t0 = std::move(tv.value);
        dt0 = std::move(tv.derivative);
    } else {
        t0 = transfer_matrix(0.0, p, b);
        dt0 = (transfer_matrix(opt.step, p, b) - transfer_matrix(-opt.step, p, b)) / (2.0 * opt.step);
    }
    Eigen::FullPivLU<MatrixXc> lu(t0);
    if (!lu.isInvertible()) throw ConsistencyError("t(0) is singular");
    MatrixXc h = -0.5 * dt0 * lu.inverse();
    double offset = transfer_offset(p, L);
    if (!opt.include_chain_constant) offset -= (L - 1);
    h.diagonal().array() += offset;
    for (std::int64_t i = 0; i < b.size(); ++i) h(i, i) -= 2.0 * b.count_particles(b.code(i));
    return h;
}

}  // namespace tjlab
