#pragma once

#include <algorithm>
#include <functional>
#include <random>

#include "tjlab/algebra/boundary.hpp"
#include "tjlab/algebra/graded.hpp"

namespace tjlab {

using KMatrixFn = std::function<Matrix3c(cplx)>;

/// Frobenius residual of the graded Yang-Baxter equation on (0, 0', j).
inline double ybe_residual(cplx u, cplx v) {
    const auto r00 = embed_r(3, 0, 1, u - v);
    const auto r0j = embed_r(3, 0, 2, u);
    const auto r1j = embed_r(3, 1, 2, v);
    return ((r00 * r0j * r1j) - (r1j * r0j * r00)).entries().norm();
}

/// Reflection equation residual for the K-matrix family `k` on (0, 0').
inline double reflection_residual(const KMatrixFn& k, cplx u, cplx v) {
    const auto r_minus = embed_r(2, 0, 1, u - v);
    const auto r_plus = embed_r(2, 0, 1, u + v);
    const auto k0 = embed_local(2, 0, k(u));
    const auto k1 = embed_local(2, 1, k(v));
    return ((r_minus * k0 * r_plus * k1) - (k1 * r_plus * k0 * r_minus)).entries().norm();
}

/// Dual reflection equation residual; the crossed argument is 1 - u - v.
inline double dual_reflection_residual(const KMatrixFn& k, cplx u, cplx v) {
    const auto r_minus = embed_r(2, 0, 1, u - v);
    const auto r_cross = embed_r(2, 0, 1, 1.0 - u - v);
    const auto k0 = embed_local(2, 0, k(v));
    const auto k1 = embed_local(2, 1, k(u));
    return ((r_minus * k0 * r_cross * k1) - (k1 * r_cross * k0 * r_minus)).entries().norm();
}

struct IntegrabilityReport {
    double ybe = 0.0;
    double reflection = 0.0;
    double dual_reflection = 0.0;
    int trials = 0;

    double max() const { return std::max({ybe, reflection, dual_reflection}); }
};

/// Random spectral points are drawn uniformly from the square [-2, 2]^2.
inline IntegrabilityReport verify_integrability(const BoundaryParams& p, int trials, std::uint64_t seed,
                                                const KMatrixFn& k_minus = {}, const KMatrixFn& k_plus = {}) {
    if (trials < 1) throw DomainError("verify_integrability needs at least one trial");
    validate(p);
    const KMatrixFn km = k_minus ? k_minus : KMatrixFn([&p](cplx u) { return build_k_minus(u, p); });
    const KMatrixFn kp = k_plus ? k_plus : KMatrixFn([&p](cplx u) { return build_k_plus(u, p); });

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    IntegrabilityReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const cplx u{uni(rng), uni(rng)};
        const cplx v{uni(rng), uni(rng)};
        rep.ybe = std::max(rep.ybe, ybe_residual(u, v));
        rep.reflection = std::max(rep.reflection, reflection_residual(km, u, v));
        rep.dual_reflection = std::max(rep.dual_reflection, dual_reflection_residual(kp, u, v));
    }
    return rep;
}

}  // namespace tjlab
