#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tjlab/algebra/hamiltonian.hpp"

namespace tjlab {

inline constexpr Eigen::Index kDenseEigenLimit = 4096;

inline void require_hermitian(const MatrixXc& h, double tol = 1e-10) {
    if (h.rows() != h.cols()) throw DomainError("operator is not square");
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > tol * scale) throw DomainError("operator is not Hermitian");
}

inline void require_hermitian(const SparseXc& h, double tol = 1e-10) {
    if (h.rows() != h.cols()) throw DomainError("operator is not square");
    const SparseXc diff = h - SparseXc(h.adjoint());
    const double scale = std::max(1.0, h.norm());
    if (diff.norm() > tol * scale) throw DomainError("operator is not Hermitian");
}

/// k lowest eigenvalues of a dense Hermitian matrix, ascending.
inline std::vector<double> exact_spectrum(const MatrixXc& h, int k) {
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const auto n = std::min<Eigen::Index>(k, ev.size());
    return {ev.data(), ev.data() + n};
}

/// Lanczos with full reorthogonalisation for the k lowest eigenvalues of a
/// large sparse Hermitian matrix. Deterministic start vector.
inline std::vector<double> lanczos_lowest(const SparseXc& h, int k, int max_steps = 600, double tol = 1e-12) {
    const auto n = h.rows();
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g;
    VectorXc v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
    v.normalize();

    std::vector<VectorXc> basis{v};
    std::vector<double> alpha, beta;
    std::vector<double> previous;
    const int steps = static_cast<int>(std::min<Eigen::Index>(max_steps, n));
    for (int j = 0; j < steps; ++j) {
        VectorXc w = h * basis.back();
        const double a = basis.back().dot(w).real();
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= q.dot(w) * q;
        const double b = w.norm();

        if ((j + 1) % 10 == 0 || b < 1e-14 || j + 1 == steps) {
            const auto m = static_cast<Eigen::Index>(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
                t(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
            std::vector<double> ritz(es.eigenvalues().data(),
                                     es.eigenvalues().data() + std::min<Eigen::Index>(k, m));
            bool done = b < 1e-14 || j + 1 == steps;
            if (!done && previous.size() == ritz.size() && static_cast<int>(ritz.size()) == k) {
                double change = 0.0;
                for (std::size_t i = 0; i < ritz.size(); ++i) change = std::max(change, std::abs(ritz[i] - previous[i]));
                done = change < tol * std::max(1.0, std::abs(ritz[0]));
            }
            previous = std::move(ritz);
            if (done) return previous;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    return previous;
}

/// Restriction of a full-space operator to a fixed particle-number sector.
inline SparseOperator restrict_to_sector(const SparseOperator& op, int particles) {
    if (op.basis.particles()) {
        if (*op.basis.particles() != particles) throw DomainError("operator lives in a different sector");
        return op;
    }
    FockBasis sector(op.basis.sites(), particles);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int outer = 0; outer < op.matrix.outerSize(); ++outer)
        for (SparseXc::InnerIterator it(op.matrix, outer); it; ++it) {
            const auto r = sector.index(op.basis.code(it.row()));
            const auto c = sector.index(op.basis.code(it.col()));
            if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
        }
    SparseXc m(sector.size(), sector.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return {std::move(sector), std::move(m)};
}

/// k lowest eigenvalues of H, optionally restricted to N particles. Dense
/// diagonalisation up to kDenseEigenLimit, Lanczos above.
inline std::vector<double> exact_spectrum(const SparseOperator& h, int k, std::optional<int> sector = std::nullopt) {
    const SparseOperator op = sector ? restrict_to_sector(h, *sector) : h;
    require_hermitian(op.matrix);
    if (op.matrix.rows() <= kDenseEigenLimit) return exact_spectrum(op.dense(), k);
    return lanczos_lowest(op.matrix, k);
}

/// Block of an operator on the basis states with total S^z = sz. Only
/// meaningful when the operator conserves S^z (fields along z).
inline SparseXc restrict_to_sz(const SparseOperator& op, double sz) {
    const auto szop = total_sz(op.basis);
    std::vector<Eigen::Index> slot(static_cast<std::size_t>(op.matrix.rows()), -1);
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i)
        if (std::abs(szop.matrix.coeff(i, i).real() - sz) < 1e-9) slot[static_cast<std::size_t>(i)] = n++;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int outer = 0; outer < op.matrix.outerSize(); ++outer)
        for (SparseXc::InnerIterator it(op.matrix, outer); it; ++it) {
            const auto r = slot[static_cast<std::size_t>(it.row())], c = slot[static_cast<std::size_t>(it.col())];
            if (r >= 0 && c >= 0) {
                trip.emplace_back(r, c, it.value());
            } else if ((r >= 0) != (c >= 0) && std::abs(it.value()) > 1e-12) {
                throw DomainError("operator does not conserve S^z");
            }
        }
    SparseXc m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

/// Ground-state energy of the chain with N electrons, optionally restricted
/// to total S^z = sz.
inline double ground_energy_ed(int L, const BoundaryParams& p, int particles, std::optional<double> sz = {}) {
    const auto h = build_hamiltonian(L, map_boundary_params(p), particles);
    if (!sz) return exact_spectrum(h, 1).front();
    const SparseXc block = restrict_to_sz(h, *sz);
    if (block.rows() == 0) throw DomainError("empty S^z sector");
    require_hermitian(block);
    if (block.rows() <= kDenseEigenLimit) return exact_spectrum(MatrixXc(block), 1).front();
    return lanczos_lowest(block, 1).front();
}

}  // namespace tjlab
