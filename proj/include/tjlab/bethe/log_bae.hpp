#pragma once

// Logarithmic string-center equations of the regime (i) ground state:
//
//   2L th_2(x_l) = 2 pi I_l + th_1(x_l) - th_{2(1-xi')}(x_l) - th_{2 xi}(x_l)
//                + sum_j [th_2(x_l - x_j) + th_2(x_l + x_j)],
//
// th_m(x) = 2 atan(2x/m), principal branch.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <Eigen/LU>

#include "tjlab/algebra/boundary.hpp"
#include "tjlab/bethe/newton.hpp"

namespace tjlab {

inline double theta_m(double m, double x) { return 2.0 * std::atan(2.0 * x / m); }
inline double theta_m_slope(double m, double x) { return 4.0 * m / (m * m + 4.0 * x * x); }

struct QuantumNumbers {
    std::vector<int> I;
    int max = 0;  // I_max = L - M
};

/// The ground-state set: the M values nearest I_max on each side,
/// {-I_max, ..., -I_max+M-1} and {I_max-M+1, ..., I_max}. Positive half
/// returned when `positive_only`.
inline QuantumNumbers ground_state_quantum_numbers(int L, int M, bool positive_only = true) {
    if (M < 1 || M > L) throw DomainError("need 1 <= M <= L");
    QuantumNumbers q;
    q.max = L - M;
    if (q.max < M) throw DomainError("I_max = L - M must be at least M");
    if (!positive_only)
        for (int j = 0; j < M; ++j) q.I.push_back(-q.max + j);
    for (int j = 0; j < M; ++j) q.I.push_back(q.max - M + 1 + j);
    return q;
}

inline void validate(const QuantumNumbers& q) {
    std::set<int> seen;
    for (int i : q.I) {
        if (i == 0) throw DomainError("quantum numbers must be nonzero");
        if (std::abs(i) > q.max) throw DomainError("quantum number exceeds I_max");
        if (!seen.insert(i).second) throw DomainError("quantum numbers must be distinct");
    }
}

/// Residual of the log equations at centers x.
inline Eigen::VectorXd log_bae_residual(const std::vector<double>& x, const QuantumNumbers& q,
                                        const BoundaryParams& p, double L) {
    const auto M = x.size();
    Eigen::VectorXd f(static_cast<Eigen::Index>(M));
    const double m1 = 2.0 * (1.0 - p.xi_prime), m2 = 2.0 * p.xi;
    for (std::size_t l = 0; l < M; ++l) {
        double v = 2.0 * L * theta_m(2.0, x[l]) - 2.0 * kPi * q.I[l] - theta_m(1.0, x[l]) + theta_m(m1, x[l]) +
                   theta_m(m2, x[l]);
        for (std::size_t j = 0; j < M; ++j) v -= theta_m(2.0, x[l] - x[j]) + theta_m(2.0, x[l] + x[j]);
        f(static_cast<Eigen::Index>(l)) = v;
    }
    return f;
}

inline Eigen::MatrixXd log_bae_jacobian(const std::vector<double>& x, const BoundaryParams& p, double L) {
    const auto M = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(M, M);
    const double m1 = 2.0 * (1.0 - p.xi_prime), m2 = 2.0 * p.xi;
    for (Eigen::Index l = 0; l < M; ++l) {
        const double xl = x[static_cast<std::size_t>(l)];
        double diag = 2.0 * L * theta_m_slope(2.0, xl) - theta_m_slope(1.0, xl) + theta_m_slope(m1, xl) +
                      theta_m_slope(m2, xl) - 2.0 * theta_m_slope(2.0, 2.0 * xl);
        for (Eigen::Index j = 0; j < M; ++j) {
            if (j == l) continue;
            const double xj = x[static_cast<std::size_t>(j)];
            const double minus = theta_m_slope(2.0, xl - xj), plus = theta_m_slope(2.0, xl + xj);
            diag -= minus + plus;
            jac(l, j) = minus - plus;
        }
        jac(l, l) = diag;
    }
    return jac;
}

/// Newton with step halving on the log equations. Regime (i) only.
/// L may be real; the quantum numbers are then kept as given.
inline std::vector<double> solve_log_bae_regime1(const QuantumNumbers& q, const BoundaryParams& p, double L,
                                                 const NewtonOptions& opt = {}) {
    validate(p);
    validate(q);
    if (classify(p) != Regime::i) throw DomainError("log BAE solver covers regime (i) only");
    const auto M = q.I.size();
    std::vector<double> x(M);
    for (std::size_t l = 0; l < M; ++l) {
        const double s = q.I[l] > 0 ? 1.0 : -1.0;
        x[l] = s * std::tan(kPi * (std::abs(q.I[l]) - 0.5) / (2.0 * (q.max + L - std::round(L))));
    }
    Eigen::VectorXd f = log_bae_residual(x, q, p, L);
    for (int it = 0; it < opt.max_iterations; ++it) {
        if (f.cwiseAbs().maxCoeff() <= opt.tolerance) return x;
        const Eigen::VectorXd step = log_bae_jacobian(x, p, L).fullPivLu().solve(-f);
        double t = 1.0;
        std::vector<double> trial(M);
        Eigen::VectorXd ft;
        for (int h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
            for (std::size_t l = 0; l < M; ++l) trial[l] = x[l] + t * step(static_cast<Eigen::Index>(l));
            ft = log_bae_residual(trial, q, p, L);
            if (ft.allFinite() && ft.norm() < f.norm()) break;
        }
        x = trial;
        f = ft;
    }
    if (f.cwiseAbs().maxCoeff() <= opt.tolerance) return x;
    throw ConvergenceError("log BAE Newton did not converge", f.cwiseAbs().maxCoeff());
}

/// Exact-string phase equations of the ground-state pattern of any regime:
/// string centers x_l with quantum numbers I_l and, in regimes (ii) and
/// (iii), one real mu = w with quantum number J. Boundary bound states shift
/// the phases of the centers:
///
///   2L th_2(x) - th_1(x) + th_{2xi}(x) + th_{2(1-xi')}(x) - sum_j [th_2(x-x_j) + th_2(x+x_j)]
///     - [th_1(x-w) + th_1(x+w)]             (real mu present)
///     - [th_{2xi'}(x) + th_{2-2xi'}(x)]     (mu at i(xi'-1/2))
///     - [th_{2xi}(x) + th_{2-2xi}(x)]       (lambda at -i xi)      = 2 pi I
///
///   2L th_1(w) + th_{1-2xi'}(w) - sum_j [th_1(w-x_j) + th_1(w+x_j)]
///     - [th_{1+2xi}(w) + th_{1-2xi}(w)]     (lambda at -i xi)      = 2 pi J
struct CenterEquations {
    Regime regime;
    BoundaryParams p;
    double L;
    std::vector<int> I;
    int J = 0;

    bool has_real_mu() const { return regime == Regime::ii || regime == Regime::iii; }
    bool has_xi_prime_string() const { return regime == Regime::ii || regime == Regime::iv; }
    bool has_xi_string() const { return regime == Regime::iii || regime == Regime::iv; }

    Eigen::VectorXd operator()(const Eigen::VectorXd& u) const {
        const auto S = static_cast<Eigen::Index>(I.size());
        Eigen::VectorXd f(u.size());
        const double xi = p.xi, xp = p.xi_prime;
        for (Eigen::Index l = 0; l < S; ++l) {
            const double x = u(l);
            double v = 2.0 * L * theta_m(2.0, x) - theta_m(1.0, x) + theta_m(2.0 * xi, x) +
                       theta_m(2.0 * (1.0 - xp), x) - 2.0 * kPi * I[static_cast<std::size_t>(l)];
            for (Eigen::Index j = 0; j < S; ++j) v -= theta_m(2.0, x - u(j)) + theta_m(2.0, x + u(j));
            if (has_real_mu()) v -= theta_m(1.0, x - u(S)) + theta_m(1.0, x + u(S));
            if (has_xi_prime_string()) v -= theta_m(2.0 * xp, x) + theta_m(2.0 - 2.0 * xp, x);
            if (has_xi_string()) v -= theta_m(2.0 * xi, x) + theta_m(2.0 - 2.0 * xi, x);
            f(l) = v;
        }
        if (has_real_mu()) {
            const double w = u(S);
            double v = 2.0 * L * theta_m(1.0, w) + theta_m(1.0 - 2.0 * xp, w) - 2.0 * kPi * J;
            for (Eigen::Index j = 0; j < S; ++j) v -= theta_m(1.0, w - u(j)) + theta_m(1.0, w + u(j));
            if (has_xi_string()) v -= theta_m(1.0 + 2.0 * xi, w) + theta_m(1.0 - 2.0 * xi, w);
            f(S) = v;
        }
        return f;
    }
};

/// Newton on the center equations from `start`, central-difference Jacobian.
inline Eigen::VectorXd solve_center_equations(const CenterEquations& eq, Eigen::VectorXd u,
                                              const NewtonOptions& opt = {}) {
    if (u.size() == 0) return u;
    Eigen::VectorXd f = eq(u);
    for (int it = 0; it < opt.max_iterations && f.cwiseAbs().maxCoeff() > opt.tolerance; ++it) {
        Eigen::MatrixXd jac(u.size(), u.size());
        for (Eigen::Index j = 0; j < u.size(); ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(u(j)));
            Eigen::VectorXd up = u, dn = u;
            up(j) += h;
            dn(j) -= h;
            jac.col(j) = (eq(up) - eq(dn)) / (2.0 * h);
        }
        const Eigen::VectorXd step = jac.fullPivLu().solve(-f);
        double t = 1.0;
        Eigen::VectorXd trial = u + step, ft = eq(trial);
        for (int h = 0; h < opt.max_halvings && !(ft.allFinite() && ft.norm() < f.norm()); ++h) {
            t *= 0.5;
            trial = u + t * step;
            ft = eq(trial);
        }
        u = trial;
        f = ft;
    }
    if (!(f.cwiseAbs().maxCoeff() <= 1e3 * opt.tolerance))
        throw ConvergenceError("string center equations did not converge", f.cwiseAbs().maxCoeff());
    return u;
}

}  // namespace tjlab
