#pragma once

// Inhomogeneous T-Q relation in the raw variables (v~, lambda~):
//
//   Lambda(u) = w3(u)(xi+u)(u+1)^{2L} Q(u-1)/Q(u)
//             - u^{2L} a(u) Q(u-1)Q1(u+1)/(Q(u)Q1(u))
//             - u^{2L} d(u) Q1(u-1)/Q1(u)
//             + 2h u^{2L+1}(u-1/2) Q(u-1)/Q1(u)
//
// with Q(u) = prod (u-v_k)(u+v_k+1) and Q1(u) = prod (u-l_k)(u+l_k).

#include <cmath>
#include <vector>

#include "tjlab/algebra/boundary.hpp"
#include "tjlab/bethe/dual.hpp"
#include "tjlab/bethe/roots.hpp"

namespace tjlab {

template <class T, class U>
T q_function(const U& u, const std::vector<T>& v) {
    T out(1.0);
    for (const auto& x : v) out *= (u - x) * (u + x + 1.0);
    return out;
}

template <class T, class U>
T q1_function(const U& u, const std::vector<T>& l) {
    T out(1.0);
    for (const auto& x : l) out *= (u - x) * (u + x);
    return out;
}

inline cplx omega3(cplx u, double xi_p) { return xi_p - u - (2.0 * xi_p - 1.0) / (2.0 * u + 1.0); }
inline cplx a_bar(cplx u, const BoundaryParams& p) {
    return (u - 0.5) / (u + 0.5) * (u + p.xi_prime) * (u + p.xi);
}
inline cplx d_bar(cplx u, const BoundaryParams& p) { return (u - p.xi_prime) * (u - p.xi); }

/// The four terms of Lambda(u); the last one is the inhomogeneous term.
struct TqTerms {
    cplx first, second, third, inhomogeneous;
    cplx total() const { return first + second + third + inhomogeneous; }
};

inline TqTerms tq_terms(cplx u, const RootConfiguration& roots, const BoundaryParams& p, double h) {
    const auto r = roots.to_raw();
    const int L = roots.L;
    const cplx q = q_function(u, r.v), qm = q_function(u - 1.0, r.v);
    const cplx q1 = q1_function(u, r.l), q1p = q1_function(u + 1.0, r.l), q1m = q1_function(u - 1.0, r.l);
    const double scale = 1.0 + std::pow(std::abs(u) + 1.0, 2 * static_cast<double>(r.v.size()));
    if (std::abs(q) < 1e-14 * scale || std::abs(q1) < 1e-14 * scale)
        throw DomainError("T-Q relation evaluated on a zero of Q or Q1");
    const cplx u2l = ipow(u, 2 * L);
    TqTerms t;
    t.first = omega3(u, p.xi_prime) * (p.xi + u) * ipow(u + 1.0, 2 * L) * qm / q;
    t.second = -u2l * a_bar(u, p) * qm * q1p / (q * q1);
    t.third = -u2l * d_bar(u, p) * q1m / q1;
    t.inhomogeneous = 2.0 * h * u2l * u * (u - 0.5) * qm / q1;
    return t;
}

inline cplx eval_inhom_tq(cplx u, const RootConfiguration& roots, const BoundaryParams& p) {
    return tq_terms(u, roots, p, p.h()).total();
}

/// Lambda with the inhomogeneous term dropped.
inline cplx eval_hom_tq(cplx u, const RootConfiguration& roots, const BoundaryParams& p) {
    return tq_terms(u, roots, p, 0.0).total();
}

/// Contour estimate of the residue of Lambda at a point, radius r, n nodes.
inline cplx tq_residue(cplx at, const RootConfiguration& roots, const BoundaryParams& p, double radius = 1e-3,
                       int nodes = 64) {
    cplx sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const cplx e = std::polar(1.0, 2.0 * kPi * (k + 0.5) / nodes);
        sum += eval_inhom_tq(at + radius * e, roots, p) * radius * e;
    }
    return sum / double(nodes);
}

/// E = -sum 1/(v(v+1)) - 2N; the imaginary part must vanish.
inline double energy_inhom(const RootConfiguration& roots, double imag_tol = 1e-9) {
    const auto r = roots.to_raw();
    cplx e = -2.0 * static_cast<double>(r.v.size());
    for (const auto& v : r.v) e -= 1.0 / (v * (v + 1.0));
    if (std::abs(e.imag()) > imag_tol * std::max(1.0, std::abs(e.real())))
        throw ConsistencyError("energy has an imaginary part " + std::to_string(e.imag()));
    return e.real();
}

/// E from -1/2 dln Lambda/du at 0 plus the additive constants, by central difference.
inline double energy_from_tq(const RootConfiguration& roots, const BoundaryParams& p, double step = 1e-5) {
    const cplx lp = eval_inhom_tq(step, roots, p), lm = eval_inhom_tq(-step, roots, p);
    const cplx dlog = (lp - lm) / (2.0 * step) / eval_inhom_tq(0.0, roots, p);
    const cplx e = -0.5 * dlog + 1.0 / (2.0 * p.xi) - (1.0 - 2.0 * p.xi_prime) / (2.0 * (1.0 - p.xi_prime)) -
                   2.0 * roots.N + double(roots.L - 1);
    return e.real();
}

}  // namespace tjlab
