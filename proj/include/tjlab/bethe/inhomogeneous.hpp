#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "tjlab/bethe/newton.hpp"
#include "tjlab/bethe/tq.hpp"

namespace tjlab {

namespace detail {

/// Polynomial forms of the two BAE families, split into their terms so the
/// solver can scale each equation by the size of its terms.
///
/// v-equations (after removing the common factor -(v-1/2)(v+xi)):
///   (v-xi'+1)(v+1)^{2L} Q1(v) + v^{2L}(v+xi') Q1(v+1)
/// lambda-equations (times (l+1/2)):
///   (l-1/2)(l+xi')(l+xi) Q(l-1)Q1(l+1) + (l+1/2)(l-xi')(l-xi) Q(l)Q1(l-1)
///   - 2h l(l-1/2)(l+1/2) Q(l)Q(l-1)
template <class T>
struct InhomTerms {
    std::vector<T> first, second, third;
};

template <class T>
InhomTerms<T> inhom_terms(const std::vector<T>& v, const std::vector<T>& l, const BoundaryParams& p, double h,
                          int L) {
    InhomTerms<T> out;
    const double xi = p.xi, xp = p.xi_prime;
    for (const auto& x : v) {
        out.first.push_back((x - xp + 1.0) * ipow(x + 1.0, 2 * L) * q1_function(x, l));
        out.second.push_back(ipow(x, 2 * L) * (x + xp) * q1_function(x + 1.0, l));
        out.third.push_back(T(0.0));
    }
    for (const auto& y : l) {
        const T qm = q_function(y - 1.0, v), q = q_function(y, v);
        out.first.push_back((y - 0.5) * (y + xp) * (y + xi) * qm * q1_function(y + 1.0, l));
        out.second.push_back((y + 0.5) * (y - xp) * (y - xi) * q * q1_function(y - 1.0, l));
        out.third.push_back(-2.0 * h * y * (y - 0.5) * (y + 0.5) * q * qm);
    }
    return out;
}

struct InhomSystem {
    BoundaryParams p;
    double h;
    int L;
    int N;

    template <class T>
    InhomTerms<T> terms(const std::vector<T>& x) const {
        const std::vector<T> v(x.begin(), x.begin() + N), l(x.begin() + N, x.end());
        return inhom_terms(v, l, p, h, L);
    }

    // The v-polynomial is odd under v -> -v-1 and the lambda-polynomial odd
    // under lambda -> -lambda; dividing by (v+1/2) and lambda removes the
    // forced zeros there, which attract Newton otherwise.
    template <class T>
    std::vector<T> operator()(const std::vector<T>& x) const {
        const auto t = terms(x);
        std::vector<T> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const T odd_factor = i < static_cast<std::size_t>(N) ? x[i] + 0.5 : x[i];
            out[i] = (t.first[i] + t.second[i] + t.third[i]) / odd_factor;
        }
        return out;
    }

    std::vector<double> scales(const std::vector<cplx>& x) const {
        const auto t = terms(x);
        std::vector<double> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = std::abs(t.first[i]) + std::abs(t.second[i]) + std::abs(t.third[i]);
        return out;
    }
};

}  // namespace detail

/// LHS - RHS of both BAE families, multiplied through by their denominators
/// (v+1/2)Q1(v) and (l+1/2). Length 2N, v-equations first.
inline std::vector<cplx> inhom_bae_residual(const RootConfiguration& roots, const BoundaryParams& p) {
    const auto r = roots.to_raw();
    const auto t = detail::inhom_terms(r.v, r.l, p, p.h(), r.L);
    std::vector<cplx> out;
    for (std::size_t k = 0; k < r.v.size(); ++k)
        out.push_back(-(r.v[k] - 0.5) * (r.v[k] + p.xi) * (t.first[k] + t.second[k]));
    for (std::size_t k = r.v.size(); k < t.first.size(); ++k) out.push_back(t.first[k] + t.second[k] + t.third[k]);
    return out;
}

/// The BAEs in ratio form, LHS - RHS, undefined on the poles.
inline std::vector<cplx> inhom_bae_ratio_residual(const RootConfiguration& roots, const BoundaryParams& p) {
    const auto r = roots.to_raw();
    const int L = r.L;
    const double h = p.h();
    std::vector<cplx> out;
    for (const auto& x : r.v) {
        const cplx lhs = omega3(x, p.xi_prime) * (p.xi + x) * ipow(x + 1.0, 2 * L);
        const cplx rhs = ipow(x, 2 * L) * a_bar(x, p) * q1_function(x + 1.0, r.l) / q1_function(x, r.l);
        out.push_back(lhs - rhs);
    }
    for (const auto& y : r.l) {
        const cplx lhs = a_bar(y, p) * q_function(y - 1.0, r.v) * q1_function(y + 1.0, r.l) +
                         d_bar(y, p) * q_function(y, r.v) * q1_function(y - 1.0, r.l);
        const cplx rhs = 2.0 * h * y * (y - 0.5) * q_function(y, r.v) * q_function(y - 1.0, r.v);
        out.push_back(lhs - rhs);
    }
    return out;
}

/// Factors relating the two forms: polynomial = ratio * factor.
inline std::vector<cplx> inhom_bae_clearing_factors(const RootConfiguration& roots) {
    const auto r = roots.to_raw();
    std::vector<cplx> out;
    for (const auto& x : r.v) out.push_back((x + 0.5) * q1_function(x, r.l));
    for (const auto& y : r.l) out.push_back(y + 0.5);
    return out;
}

/// Roots that make the polynomial equations vanish for any other roots:
/// v~ = -1/2 or 1/2 or -xi, lambda~ = 0, and coincident or mirrored pairs.
inline bool is_admissible(const RootConfiguration& roots, const BoundaryParams& p, double tol = 1e-6) {
    const auto r = roots.to_raw();
    for (std::size_t a = 0; a < r.v.size(); ++a) {
        const cplx x = r.v[a];
        if (std::abs(x + 0.5) < tol || std::abs(x - 0.5) < tol || std::abs(x + p.xi) < tol) return false;
        for (std::size_t b = a + 1; b < r.v.size(); ++b)
            if (std::abs(x - r.v[b]) < tol || std::abs(x + r.v[b] + 1.0) < tol) return false;
    }
    for (std::size_t a = 0; a < r.l.size(); ++a) {
        const cplx y = r.l[a];
        if (std::abs(y) < tol) return false;
        for (std::size_t b = a + 1; b < r.l.size(); ++b)
            if (std::abs(y - r.l[b]) < tol || std::abs(y + r.l[b]) < tol) return false;
    }
    return true;
}

inline RootConfiguration solve_inhom_bae(const RootConfiguration& seed, const BoundaryParams& p,
                                         const NewtonOptions& opt = {}) {
    validate(p);
    const auto s = seed.to_raw();
    if (s.L < 1 || s.L > 8) throw DomainError("inhomogeneous BAE solving supports 1 <= L <= 8");
    if (static_cast<int>(s.v.size()) != s.N || s.l.size() != s.v.size())
        throw DomainError("inhomogeneous seed needs N v-roots and N lambda-roots");
    detail::InhomSystem sys{p, p.h(), s.L, s.N};
    VectorXc x0(2 * s.N);
    for (int k = 0; k < s.N; ++k) {
        x0(k) = s.v[static_cast<std::size_t>(k)];
        x0(s.N + k) = s.l[static_cast<std::size_t>(k)];
    }
    const auto res = damped_newton(sys, x0, opt);
    if (!res.converged)
        throw ConvergenceError("inhomogeneous BAE Newton did not converge, residual " + std::to_string(res.residual),
                               res.residual);
    RootConfiguration out = s;
    out.M = s.N;
    for (int k = 0; k < s.N; ++k) {
        out.v[static_cast<std::size_t>(k)] = res.x(k);
        out.l[static_cast<std::size_t>(k)] = res.x(s.N + k);
    }
    out.info = {true, res.iterations, res.jitters, res.residual};
    return out;
}

/// Deterministic multi-start. Even starts place each mu and lambda (shifted
/// variables) near the real axis or, for boundary strings, on the imaginary
/// axis, where ground-state roots sit; odd starts
/// draw raw roots with log-uniform modulus up to `radius` and uniform phase.
/// Every admissible converged configuration is returned once (duplicates
/// detected through E and Lambda at a fixed point).
inline std::vector<RootConfiguration> multistart_inhom_bae(const BoundaryParams& p, int L, int N, int starts,
                                                           std::uint64_t seed = 2024, double radius = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logmod(std::log(0.1), std::log(radius)), phase(-kPi, kPi);
    std::uniform_real_distribution<double> axis(0.05, radius), off(-0.05, 0.05), imag_axis(-3.0, 3.0);
    std::bernoulli_distribution on_imag(0.3);
    auto shifted = [&] {
        return on_imag(rng) ? cplx(off(rng), imag_axis(rng)) : cplx(axis(rng), off(rng));
    };
    auto draw = [&] { return std::polar(std::exp(logmod(rng)), phase(rng)); };
    std::vector<RootConfiguration> found;
    for (int s = 0; s < starts; ++s) {
        RootConfiguration guess;
        guess.L = L;
        guess.N = N;
        guess.M = N;
        guess.regime = classify(p);
        for (int k = 0; k < N; ++k) {
            if (s % 2 == 0) {
                guess.v.push_back(kI * shifted() - 0.5);
                guess.l.push_back(kI * shifted());
            } else {
                guess.v.push_back(draw() - 0.5);
                guess.l.push_back(draw());
            }
        }
        RootConfiguration sol;
        try {
            NewtonOptions opt;
            opt.max_iterations = 200;
            opt.seed = seed + static_cast<std::uint64_t>(s);
            sol = solve_inhom_bae(guess, p, opt);
        } catch (const ConvergenceError&) {
            continue;
        }
        if (!is_admissible(sol, p)) continue;
        double e;
        try {
            e = energy_inhom(sol, 1e-7);
        } catch (const ConsistencyError&) {
            continue;
        }
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const RootConfiguration& f) {
            return std::abs(energy_inhom(f, 1e-7) - e) < 1e-9 &&
                   std::abs(eval_inhom_tq(cplx(0.37, 0.21), f, p) - eval_inhom_tq(cplx(0.37, 0.21), sol, p)) <
                       1e-8 * std::max(1.0, std::abs(eval_inhom_tq(cplx(0.37, 0.21), f, p)));
        });
        if (!duplicate) found.push_back(std::move(sol));
    }
    return found;
}

}  // namespace tjlab
