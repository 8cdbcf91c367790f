#pragma once

// Reduced (homogeneous) BAEs in the shifted variables (mu, lambda),
// cleared of denominators:
//
//   (mu - i(1/2-xi'))(mu - i/2)^{2L} prod_j (mu-l_j+i/2)(mu+l_j+i/2)
// + (mu + i(1/2-xi'))(mu + i/2)^{2L} prod_j (mu-l_j-i/2)(mu+l_j-i/2) = 0
//
//   (l+i/2)(l-i xi')(l-i xi) prod_k (l-mu_k+i/2)(l+mu_k+i/2) prod_m (l-l_m-i)(l+l_m-i)
// + (l-i/2)(l+i xi')(l+i xi) prod_k (l-mu_k-i/2)(l+mu_k-i/2) prod_m (l-l_m+i)(l+l_m+i) = 0
//
// Roots bound in strings are carried as deviations from their anchor
// (mu = l_m +- i/2 + eps, mu = i(xi'-1/2) + eps, l = -i xi + eta), so the
// factors that vanish on an exact string are computed without cancellation.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tjlab/bethe/log_bae.hpp"
#include "tjlab/bethe/newton.hpp"
#include "tjlab/bethe/roots.hpp"

namespace tjlab {

enum class MuAnchor { free, string_upper, string_lower, boundary_xi_prime };
enum class LambdaAnchor { free, boundary_xi };

struct RootPattern {
    std::vector<MuAnchor> mu;
    std::vector<int> partner;  // lambda index for string members, -1 otherwise
    std::vector<LambdaAnchor> lambda;

    int N() const { return static_cast<int>(mu.size()); }
    int M() const { return static_cast<int>(lambda.size()); }
};

namespace detail {

struct ReducedSystem {
    BoundaryParams p;
    double L;  // real during length continuation
    RootPattern pattern;

    template <class T>
    struct Roots {
        std::vector<T> mu, lambda;
    };

    template <class T>
    Roots<T> unpack(const std::vector<T>& z) const {
        const int N = pattern.N(), M = pattern.M();
        Roots<T> r;
        r.lambda.resize(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            const T& x = z[static_cast<std::size_t>(N + m)];
            r.lambda[static_cast<std::size_t>(m)] =
                pattern.lambda[static_cast<std::size_t>(m)] == LambdaAnchor::free ? x : x - kI * p.xi;
        }
        r.mu.resize(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const T& x = z[ks];
            switch (pattern.mu[ks]) {
                case MuAnchor::free: r.mu[ks] = x; break;
                case MuAnchor::string_upper:
                    r.mu[ks] = r.lambda[static_cast<std::size_t>(pattern.partner[ks])] + 0.5 * kI + x;
                    break;
                case MuAnchor::string_lower:
                    r.mu[ks] = r.lambda[static_cast<std::size_t>(pattern.partner[ks])] - 0.5 * kI + x;
                    break;
                case MuAnchor::boundary_xi_prime: r.mu[ks] = x + kI * (p.xi_prime - 0.5); break;
            }
        }
        return r;
    }

    // mu_k - l_m + s i/2, exact for a string member and its own center.
    template <class T>
    T mu_minus_lambda(const std::vector<T>& z, const Roots<T>& r, int k, int m, int s) const {
        const auto ks = static_cast<std::size_t>(k);
        if (pattern.partner[ks] == m) {
            if (pattern.mu[ks] == MuAnchor::string_upper && s < 0) return z[ks];
            if (pattern.mu[ks] == MuAnchor::string_lower && s > 0) return z[ks];
        }
        return r.mu[ks] - r.lambda[static_cast<std::size_t>(m)] + double(s) * 0.5 * kI;
    }

    // The mu-equations carry ((mu - i/2)/(mu + i/2))^{2L}. For real L on the
    // principal branch its phase drifts by a multiple of 2 pi L, which would
    // move a state's labels while L varies. A constant phase
    // exp(i pi s (L - target)) per root cancels the drift, keeps conjugate
    // string members conjugate, and is 1 at the physical length.
    int target = 0;

    double drift_multiplier(int k) const {
        const auto ks = static_cast<std::size_t>(k);
        switch (pattern.mu[ks]) {
            case MuAnchor::string_upper: {
                const auto m = static_cast<std::size_t>(pattern.partner[ks]);
                if (pattern.lambda[m] == LambdaAnchor::boundary_xi) return p.xi / (p.xi - 1.0) > 0.0 ? 0.0 : -2.0;
                return 1.0;
            }
            case MuAnchor::string_lower: return 1.0;
            case MuAnchor::boundary_xi_prime: return (p.xi_prime - 1.0) / p.xi_prime > 0.0 ? 0.0 : -2.0;
            case MuAnchor::free: return 2.0;
        }
        return 0.0;
    }

    /// Both terms of every equation, mu-equations first.
    ///
    /// In a lambda-equation the factor of a string member that equals its
    /// deviation is replaced by the deviation its own mu-equation implies,
    /// eps = -(term without eps)/(term with eps, eps removed). This is exact
    /// wherever the mu-equations hold and keeps the lambda-equations of order
    /// one when the deviations are exponentially small.
    template <class T>
    std::pair<std::vector<T>, std::vector<T>> terms(const std::vector<T>& z) const {
        const int N = pattern.N(), M = pattern.M();
        const auto r = unpack(z);
        std::vector<T> first, second, implied(static_cast<std::size_t>(N));
        const cplx bxp = kI * (0.5 - p.xi_prime);
        for (int k = 0; k < N; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const T& mu = r.mu[ks];
            const T plus_b = pattern.mu[ks] == MuAnchor::boundary_xi_prime ? z[ks] : mu + bxp;
            T a = (mu - bxp) * rpow((mu - 0.5 * kI) / (mu + 0.5 * kI), 2.0 * L);
            if (L != target) a *= std::exp(kI * kPi * drift_multiplier(k) * (L - target));
            T b = plus_b;
            T a_rest = a, b_rest = b;
            for (int j = 0; j < M; ++j) {
                const T& lj = r.lambda[static_cast<std::size_t>(j)];
                const T fa = mu_minus_lambda(z, r, k, j, +1), fb = mu_minus_lambda(z, r, k, j, -1);
                const bool own = pattern.partner[ks] == j;
                a *= fa * (mu + lj + 0.5 * kI);
                b *= fb * (mu + lj - 0.5 * kI);
                a_rest *= (own && pattern.mu[ks] == MuAnchor::string_lower ? T(1.0) : fa) * (mu + lj + 0.5 * kI);
                b_rest *= (own && pattern.mu[ks] == MuAnchor::string_upper ? T(1.0) : fb) * (mu + lj - 0.5 * kI);
            }
            if (pattern.mu[ks] == MuAnchor::string_upper) implied[ks] = -a / b_rest;
            if (pattern.mu[ks] == MuAnchor::string_lower) implied[ks] = -b / a_rest;
            first.push_back(a);
            second.push_back(b);
        }
        for (int l = 0; l < M; ++l) {
            const auto ls = static_cast<std::size_t>(l);
            const T& y = r.lambda[ls];
            const T plus_xi = pattern.lambda[ls] == LambdaAnchor::boundary_xi ? z[static_cast<std::size_t>(N + l)]
                                                                             : y + kI * p.xi;
            T a = (y + 0.5 * kI) * (y - kI * p.xi_prime) * (y - kI * p.xi);
            T b = (y - 0.5 * kI) * (y + kI * p.xi_prime) * plus_xi;
            for (int k = 0; k < N; ++k) {
                const auto ks = static_cast<std::size_t>(k);
                const T& mk = r.mu[ks];
                const bool own = pattern.partner[ks] == l;
                const T fa = own && pattern.mu[ks] == MuAnchor::string_upper ? implied[ks]
                                                                              : mu_minus_lambda(z, r, k, l, -1);
                const T fb = own && pattern.mu[ks] == MuAnchor::string_lower ? implied[ks]
                                                                              : mu_minus_lambda(z, r, k, l, +1);
                a *= -fa * (y + mk + 0.5 * kI);
                b *= -fb * (y + mk - 0.5 * kI);
            }
            for (int m = 0; m < M; ++m) {
                const T& lm = r.lambda[static_cast<std::size_t>(m)];
                a *= (y - lm - kI) * (y + lm - kI);
                b *= (y - lm + kI) * (y + lm + kI);
            }
            first.push_back(a);
            second.push_back(b);
        }
        return {first, second};
    }

    // Each equation is odd under its own root's sign flip and vanishes at
    // mu = 0 (lambda = 0) for any other roots; the solver divides that out.
    template <class T>
    std::vector<T> operator()(const std::vector<T>& z) const {
        const auto [a, b] = terms(z);
        const auto r = unpack(z);
        std::vector<T> out(a.size());
        const auto N = static_cast<std::size_t>(pattern.N());
        for (std::size_t i = 0; i < a.size(); ++i) {
            const T& root = i < N ? r.mu[i] : r.lambda[i - N];
            out[i] = (a[i] + b[i]) / root;
        }
        return out;
    }

    std::vector<double> scales(const std::vector<cplx>& z) const {
        const auto [a, b] = terms(z);
        std::vector<double> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::abs(a[i]) + std::abs(b[i]);
        return out;
    }

    /// One mu-equation as a function of that root's own unknown, all other
    /// unknowns frozen. The mu-equations decouple once lambda is fixed.
    struct SingleMu {
        const ReducedSystem* sys;
        std::vector<cplx> z;
        std::size_t k;

        template <class T>
        std::vector<T> operator()(const std::vector<T>& x) const {
            std::vector<T> full(z.begin(), z.end());
            full[k] = x[0];
            return {(*sys)(full)[k]};
        }
        std::vector<double> scales(const std::vector<cplx>& x) const {
            std::vector<cplx> full = z;
            full[k] = x[0];
            return {sys->scales(full)[k]};
        }
    };

    std::vector<cplx> relax_mu(std::vector<cplx> z, const NewtonOptions& opt) const {
        for (std::size_t k = 0; k < pattern.mu.size(); ++k) {
            SingleMu f{this, z, k};
            VectorXc x0(1);
            x0(0) = z[k];
            const auto res = damped_newton(f, x0, opt);
            if (res.converged) z[k] = res.x(0);
        }
        return z;
    }

    std::vector<cplx> deviations(const Roots<cplx>& r) const {
        const int N = pattern.N(), M = pattern.M();
        std::vector<cplx> z(static_cast<std::size_t>(N + M));
        for (int m = 0; m < M; ++m) {
            const auto ms = static_cast<std::size_t>(m);
            z[static_cast<std::size_t>(N) + ms] =
                pattern.lambda[ms] == LambdaAnchor::free ? r.lambda[ms] : r.lambda[ms] + kI * p.xi;
        }
        for (int k = 0; k < N; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const cplx mu = r.mu[ks];
            switch (pattern.mu[ks]) {
                case MuAnchor::free: z[ks] = mu; break;
                case MuAnchor::string_upper:
                    z[ks] = mu - r.lambda[static_cast<std::size_t>(pattern.partner[ks])] - 0.5 * kI;
                    break;
                case MuAnchor::string_lower:
                    z[ks] = mu - r.lambda[static_cast<std::size_t>(pattern.partner[ks])] + 0.5 * kI;
                    break;
                case MuAnchor::boundary_xi_prime: z[ks] = mu - kI * (p.xi_prime - 0.5); break;
            }
        }
        return z;
    }
};

}  // namespace detail

/// Number of lambda roots in the ground-state pattern of each regime.
inline int ground_state_m(Regime r, int N) {
    if (N % 2 != 0) throw DomainError("ground-state root patterns need even N");
    return r == Regime::ii ? N / 2 - 1 : N / 2;
}

/// Ground-state root pattern of a regime, N even.
inline RootPattern ground_state_pattern(Regime regime, int N) {
    const int M = ground_state_m(regime, N);
    RootPattern pat;
    pat.lambda.assign(static_cast<std::size_t>(M), LambdaAnchor::free);
    const int strings = regime == Regime::i ? N / 2 : N / 2 - 1;
    if (strings < 0) throw DomainError("need N >= 2 for this regime");
    for (int j = 0; j < strings; ++j) {
        pat.mu.push_back(MuAnchor::string_upper);
        pat.partner.push_back(j);
        pat.mu.push_back(MuAnchor::string_lower);
        pat.partner.push_back(j);
    }
    auto push = [&](MuAnchor a, int partner) {
        pat.mu.push_back(a);
        pat.partner.push_back(partner);
    };
    switch (regime) {
        case Regime::i: break;
        case Regime::ii:
            push(MuAnchor::free, -1);
            push(MuAnchor::boundary_xi_prime, -1);
            break;
        case Regime::iii:
            pat.lambda.back() = LambdaAnchor::boundary_xi;
            push(MuAnchor::free, -1);
            push(MuAnchor::string_upper, M - 1);
            break;
        case Regime::iv:
            pat.lambda.back() = LambdaAnchor::boundary_xi;
            push(MuAnchor::boundary_xi_prime, -1);
            push(MuAnchor::string_upper, M - 1);
            break;
        case Regime::none: throw DomainError("no ground-state pattern outside the four regimes");
    }
    return pat;
}

/// Positive string centers from the free counting function
/// 2(L-M) theta_2(x) = 2 pi (I - 1/2), I taking the largest M values below L-M.
inline std::vector<double> heuristic_centers(int L, int M, int count) {
    std::vector<double> out;
    const int imax = std::max(L - M, count);
    for (int j = 0; j < count; ++j) {
        const double I = imax - count + 1 + j;
        out.push_back(std::tan(kPi * (I - 0.5) / (2.0 * imax)));
    }
    return out;
}

/// Initial roots (shifted representation) for the ground-state pattern of a
/// regime. Boundary strings are displaced by 1e-4 i from their exact values.
inline RootConfiguration seed_roots(Regime regime, int L, int N, const BoundaryParams& p,
                                    const std::vector<double>& centers = {}) {
    if (regime == Regime::none || !consistent(regime, p))
        throw DomainError("regime " + to_string(regime) + " does not match the boundary parameters");
    if (N < 2 || N % 2 != 0 || N > L) throw DomainError("seed_roots needs even 2 <= N <= L");
    const auto pat = ground_state_pattern(regime, N);
    const int M = pat.M();
    const int strings = regime == Regime::i ? N / 2 : N / 2 - 1;
    std::vector<double> c = centers;
    if (c.empty()) c = heuristic_centers(L, M, std::max(strings, 1) + (regime == Regime::i ? 0 : 1));
    RootConfiguration r;
    r.regime = regime;
    r.L = L;
    r.N = N;
    r.M = M;
    r.representation = Representation::shifted;
    r.l.assign(static_cast<std::size_t>(M), 0.0);
    r.v.assign(static_cast<std::size_t>(N), 0.0);
    for (int j = 0; j < strings; ++j) r.l[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
    const cplx eps = 1e-4 * kI;  // along the imaginary axis, so boundary roots stay pure imaginary
    if (regime == Regime::ii) {
        // the real root takes the largest spare center
        r.v[static_cast<std::size_t>(N - 2)] = c.back();
        r.v[static_cast<std::size_t>(N - 1)] = kI * (p.xi_prime - 0.5) + eps;
    } else if (regime == Regime::iii) {
        r.l[static_cast<std::size_t>(M - 1)] = -kI * p.xi + eps;
        r.v[static_cast<std::size_t>(N - 2)] = c.back();
        r.v[static_cast<std::size_t>(N - 1)] = kI * (0.5 - p.xi) + eps;
    } else if (regime == Regime::iv) {
        r.l[static_cast<std::size_t>(M - 1)] = -kI * p.xi + eps;
        r.v[static_cast<std::size_t>(N - 2)] = kI * (p.xi_prime - 0.5) + eps;
        r.v[static_cast<std::size_t>(N - 1)] = kI * (0.5 - p.xi) + eps;
    }
    for (int j = 0; j < strings; ++j) {
        const cplx x = r.l[static_cast<std::size_t>(j)];
        r.v[static_cast<std::size_t>(2 * j)] = x + 0.5 * kI;
        r.v[static_cast<std::size_t>(2 * j + 1)] = x - 0.5 * kI;
    }
    return r;
}

/// Solves the reduced BAEs from a seed laid out as seed_roots produces it.
/// Newton after relaxing each mu on its own equation.
inline RootConfiguration solve_reduced_bae(const RootConfiguration& seed, const BoundaryParams& p,
                                           const NewtonOptions& opt = {}) {
    validate(p);
    const auto s = seed.to_shifted();
    if (static_cast<int>(s.v.size()) != s.N || static_cast<int>(s.l.size()) != s.M)
        throw DomainError("seed sizes disagree with N and M");
    const auto pat = ground_state_pattern(s.regime, s.N);
    if (pat.M() != s.M) throw DomainError("seed M differs from the ground-state pattern");
    detail::ReducedSystem sys{p, double(s.L), pat, s.L};
    const auto start = sys.deviations({s.v, s.l});
    auto as_vector = [](const std::vector<cplx>& z) {
        return VectorXc(Eigen::Map<const VectorXc>(z.data(), static_cast<Eigen::Index>(z.size())));
    };

    const NewtonResult res = damped_newton(sys, as_vector(sys.relax_mu(start, opt)), opt);
    if (!res.converged)
        throw ConvergenceError("reduced BAE Newton did not converge, residual " + std::to_string(res.residual),
                               res.residual);
    const auto roots = sys.unpack(std::vector<cplx>(res.x.data(), res.x.data() + res.x.size()));
    RootConfiguration out = s;
    out.v = roots.mu;
    out.l = roots.lambda;
    out.info = {true, res.iterations, res.jitters, res.residual};
    return out;
}

/// Quantum numbers of an exact-string state: I for the string centers, J
/// for the real mu of regimes (ii) and (iii).
struct StringQuantumNumbers {
    std::vector<int> I;
    int J = 0;
};

/// Solves the reduced BAEs for the state labelled by `q`, by continuation in
/// the chain length. The reduced equations stay meaningful for real L. At
/// L' = stretch * L the labelled state has small centers and nearly exact
/// strings, so it is seeded from the exact-string phase equations there and
/// followed down to L' = L with adaptive steps.
inline RootConfiguration solve_reduced_state(Regime regime, int L, int N, const BoundaryParams& p,
                                             const StringQuantumNumbers& q, double stretch = 2.0,
                                             const NewtonOptions& opt = {}) {
    validate(p);
    if (!consistent(regime, p)) throw DomainError("regime does not match the boundary parameters");
    const auto pat = ground_state_pattern(regime, N);
    const int strings = regime == Regime::i ? N / 2 : N / 2 - 1;
    if (static_cast<int>(q.I.size()) != strings) throw DomainError("one quantum number per string needed");
    double length = stretch * L;

    CenterEquations eq{regime, p, length, q.I, q.J};
    Eigen::VectorXd u(strings + (eq.has_real_mu() ? 1 : 0));
    const double imax = length - pat.M();
    for (int j = 0; j < strings; ++j) u(j) = std::tan(kPi * (std::abs(q.I[j]) - 0.5) / (2.0 * imax));
    if (eq.has_real_mu()) u(strings) = 0.5 * std::tan(kPi * std::abs(q.J) / (2.0 * length + 1.0));
    u = solve_center_equations(eq, u, opt);

    const std::vector<double> centers(u.data(), u.data() + u.size());
    const auto seed = seed_roots(regime, L, N, p, centers);
    detail::ReducedSystem sys{p, length, pat, L};
    auto as_vector = [](const std::vector<cplx>& z) {
        return VectorXc(Eigen::Map<const VectorXc>(z.data(), static_cast<Eigen::Index>(z.size())));
    };
    NewtonResult res = damped_newton(sys, as_vector(sys.relax_mu(sys.deviations({seed.v, seed.l}), opt)), opt);
    if (!res.converged)
        throw ConvergenceError("reduced BAE: no start at stretched length, residual " + std::to_string(res.residual),
                               res.residual);
    // A step is accepted when Newton converges and no root moves by more
    // than `max_move`; larger moves mean Newton has left the tracked branch.
    auto roots_of = [&](const VectorXc& x) {
        auto r = sys.unpack(std::vector<cplx>(x.data(), x.data() + x.size()));
        r.mu.insert(r.mu.end(), r.lambda.begin(), r.lambda.end());
        return r.mu;
    };
    constexpr double max_step = 0.05, min_step = 1e-5, max_move = 0.1;
    NewtonOptions path = opt;
    path.tolerance = std::max(opt.tolerance, 1e-10);
    VectorXc z = res.x;
    auto current = roots_of(z);
    double step = max_step;
    while (length > L) {
        const double next = std::max(double(L), length - step);
        sys.L = next;
        res = damped_newton(sys, z, next == L ? opt : path);
        bool accepted = res.converged;
        if (accepted) {
            const auto moved = roots_of(res.x);
            for (std::size_t k = 0; k < moved.size() && accepted; ++k)
                accepted = std::abs(moved[k] - current[k]) <= max_move;
            if (accepted) current = moved;
        }
        if (!accepted) {
            step *= 0.5;
            if (step < min_step)
                throw ConvergenceError("reduced BAE length continuation stalled at L' = " + std::to_string(length),
                                       res.residual);
            continue;
        }
        z = res.x;
        length = next;
        step = std::min(max_step, step * 1.5);
    }
    const auto roots = sys.unpack(std::vector<cplx>(z.data(), z.data() + z.size()));
    RootConfiguration out = seed;
    out.v = roots.mu;
    out.l = roots.lambda;
    out.info = {true, res.iterations, res.jitters, res.residual};
    return out;
}

/// Cleared reduced BAE residuals (mu-equations first) at a configuration.
inline std::vector<cplx> reduced_bae_residual(const RootConfiguration& roots, const BoundaryParams& p) {
    const auto s = roots.to_shifted();
    RootPattern free_pattern;
    free_pattern.mu.assign(s.v.size(), MuAnchor::free);
    free_pattern.partner.assign(s.v.size(), -1);
    free_pattern.lambda.assign(s.l.size(), LambdaAnchor::free);
    detail::ReducedSystem sys{p, double(s.L), free_pattern, s.L};
    std::vector<cplx> z = s.v;
    z.insert(z.end(), s.l.begin(), s.l.end());
    const auto [a, b] = sys.terms(z);
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

/// Coincident roots, mirrored pairs (x, -x) and roots at 0 solve the cleared
/// equations without describing a state.
inline bool is_admissible_reduced(const RootConfiguration& roots, double tol = 1e-6) {
    const auto s = roots.to_shifted();
    auto distinct = [tol](const std::vector<cplx>& xs) {
        for (std::size_t a = 0; a < xs.size(); ++a) {
            if (std::abs(xs[a]) < tol) return false;
            for (std::size_t b = a + 1; b < xs.size(); ++b)
                if (std::abs(xs[a] - xs[b]) < tol || std::abs(xs[a] + xs[b]) < tol) return false;
        }
        return true;
    };
    return distinct(s.v) && distinct(s.l);
}

/// Labels of the lowest state of each pattern: I = 1..S, and J = S + 1 in
/// regime (ii), J = S in regime (iii). Checked against exact
/// diagonalisation in the pattern's S^z sector for L <= 10.
inline StringQuantumNumbers ground_state_labels(Regime regime, int N) {
    const int strings = regime == Regime::i ? N / 2 : N / 2 - 1;
    StringQuantumNumbers q;
    for (int j = 1; j <= strings; ++j) q.I.push_back(j);
    if (regime == Regime::ii) q.J = strings + 1;
    if (regime == Regime::iii) q.J = strings;
    return q;
}

/// Lowest state of the regime's root pattern. Length continuation first;
/// a direct solve from counting-function centers when the path breaks
/// (it does for N = 2 in regime (iii), where the real root passes zero).
inline RootConfiguration solve_reduced_ground_state(Regime regime, int L, int N, const BoundaryParams& p,
                                                    const NewtonOptions& opt = {}) {
    try {
        auto r = solve_reduced_state(regime, L, N, p, ground_state_labels(regime, N), 2.0, opt);
        if (is_admissible_reduced(r)) return r;
    } catch (const ConvergenceError&) {
    }
    auto r = solve_reduced_bae(seed_roots(regime, L, N, p), p, opt);
    if (!is_admissible_reduced(r))
        throw ConvergenceError("reduced BAE converged to a spurious configuration", r.info.residual);
    return r;
}

/// E_hom = sum 1/(mu^2 + 1/4) - 2N.
inline double energy_reduced(const RootConfiguration& roots, double imag_tol = 1e-9) {
    const auto s = roots.to_shifted();
    cplx e = -2.0 * static_cast<double>(s.v.size());
    for (const auto& mu : s.v) e += 1.0 / ((mu - 0.5 * kI) * (mu + 0.5 * kI));
    if (std::abs(e.imag()) > imag_tol * std::max(1.0, std::abs(e.real())))
        throw ConsistencyError("reduced energy has an imaginary part " + std::to_string(e.imag()));
    return e.real();
}

inline double delta_e(double e, double e_hom) { return std::abs(e - e_hom); }

}  // namespace tjlab
