#pragma once

// Root densities of the four ground-state patterns in the thermodynamic limit.
//
// Each regime's density obeys
//
//   rho(x) = s(x) - int_{|y| > Q0} a_2(x - y) rho(y) dy,
//   s(x)   = sum_j c_j a_{m_j}(x)  [+ c_hole delta(x) at half filling],
//
// with the 1/(2L) boundary sources listed in regime_source(). The hole terms
// tied to the real root mu_{N-1} are dropped (that root sits at infinity).
//
// Two solvers:
//  * solve_density: Nystrom on the excluded support [Q0, lambda_max] folded
//    to the half line, with a self-consistent c * a_2 tail beyond lambda_max.
//  * InteriorSolution: the equivalent equation on the finite interval
//    [-Q0, Q0] with the resolvent kernel R (Fourier image e^{-|w|}/(1+e^{-|w|})),
//    whose pieces are all closed forms in alternating_beta. Used for Q0,
//    fillings and energies, where the algebraic tail would otherwise limit
//    accuracy to ~1e-6.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "tjlab/algebra/boundary.hpp"
#include "tjlab/continuum/quadrature.hpp"
#include "tjlab/continuum/special.hpp"

namespace tjlab {

inline double kernel_a(double m, double x) {
    if (!(m > 0.0)) throw DomainError("kernel width m must be positive");
    return m / (2.0 * kPi * (x * x + 0.25 * m * m));
}
inline double kernel_theta(double m, double x) {
    if (!(m > 0.0)) throw DomainError("kernel width m must be positive");
    return 2.0 * std::atan(2.0 * x / m);
}

struct SourceTerm {
    double coeff;
    double m;  // a_m in real space, e^{-m|w|/2} in Fourier space
};

struct DensitySource {
    std::vector<SourceTerm> terms;
    double hole = 0.0;  // weight of delta(x)

    double fourier(double w) const {
        double s = hole;
        for (const auto& t : terms) s += t.coeff * std::exp(-0.5 * t.m * std::abs(w));
        return s;
    }
    double real_space(double x) const {
        double s = 0.0;
        for (const auto& t : terms) s += t.coeff * kernel_a(t.m, x);
        return s;
    }
};

inline bool is_finite_length(double L) { return std::isfinite(L); }

inline void require_regime(Regime r, const BoundaryParams& p) {
    if (r == Regime::none) throw DomainError("a regime (i, ii, iii or iv) is required");
    if (!consistent(r, p))
        throw DomainError("boundary parameters do not belong to regime " + to_string(r));
}

/// Bulk a_2 plus the 1/(2L) boundary sources of the regime's density equation.
/// `with_hole` adds the delta(x) of the half-filling forms, with the sign
/// those forms carry.
inline DensitySource regime_source(Regime r, const BoundaryParams& p, double L, bool with_hole = false) {
    require_regime(r, p);
    DensitySource s;
    s.terms.push_back({1.0, 2.0});
    if (!is_finite_length(L)) return s;
    if (!(L > 0.0)) throw DomainError("L must be positive");
    const double c = 1.0 / (2.0 * L), xi = p.xi, xp = p.xi_prime;
    s.terms.push_back({-c, 1.0});
    switch (r) {
        case Regime::i:
            s.terms.push_back({c, 2.0 * (1.0 - xp)});
            s.terms.push_back({c, 2.0 * xi});
            break;
        case Regime::ii:
            s.terms.push_back({c, 2.0 * xi});
            s.terms.push_back({-c, 2.0 * xp});
            break;
        case Regime::iii:
            s.terms.push_back({c, 2.0 * (1.0 - xp)});
            s.terms.push_back({-c, 2.0 * (1.0 - xi)});
            break;
        case Regime::iv:
            s.terms.push_back({-c, 2.0 * (1.0 - xi)});
            s.terms.push_back({-c, 2.0 * xp});
            break;
        case Regime::none:
            break;
    }
    // The closed-form regime (ii) half-filling density carries +1 where the others carry -1.
    if (with_hole) s.hole = r == Regime::ii ? c : -c;
    return s;
}

/// Filling target of the density: n/2 in regime (i), n/2 - 1/L otherwise.
inline double filling_target(Regime r, double n, double L) {
    if (!(n > 0.0 && n <= 1.0)) throw DomainError("filling n must lie in (0, 1]");
    if (r == Regime::i || !is_finite_length(L)) return 0.5 * n;
    return 0.5 * n - 1.0 / L;
}

// ---------------------------------------------------------------------------
// Real-space solver on the excluded support

struct GridSpec {
    double lambda_max = 40.0;
    double panel = 0.5;
    int order = 16;
};

struct DensityProfile {
    Regime regime = Regime::none;
    std::vector<double> grid;  // nodes on [Q0, lambda_max]
    std::vector<double> weights;
    std::vector<double> rho;  // smooth part; a delta(x) of weight source.hole sits on top at Q0 = 0
    double Q0 = 0.0;
    double lambda_max = 40.0;
    double L = kInf;
    // Beyond lambda_max, rho ~ (tail[0] + tail[1] / (1 + x^2)) a_2(x).
    std::array<double, 2> tail{0.0, 0.0};
    double rcond = 0.0;
    DensitySource source;

    /// Smooth part at any x, by Nystrom interpolation (even in x).
    double operator()(double x) const;
    /// int_{|x|>Q0} rho, including the tail model and the delta weight.
    double filling() const;
    /// int_{|x|>Q0} a_2 rho.
    double a2_moment() const;
};

namespace detail {

inline double folded_kernel(double x, double y) { return kernel_a(2.0, x - y) + kernel_a(2.0, x + y); }

/// int_{lmax}^inf f(y) a_2(y) dy: y = lmax + u on [0, 64], then y = (lmax + 64)/t.
template <class F>
double tail_integral(double lmax, F&& f) {
    static const QuadratureRule near = uniform_panels(0.0, 64.0, 0.5, 16);
    static const QuadratureRule far = uniform_panels(0.0, 1.0, 0.125, 16);
    double s = 0.0;
    for (std::size_t i = 0; i < near.size(); ++i) {
        const double y = lmax + near.x[i];
        s += near.w[i] * f(y) * kernel_a(2.0, y);
    }
    const double y0 = lmax + 64.0;
    for (std::size_t i = 0; i < far.size(); ++i) {
        const double t = far.x[i], y = y0 / t;
        s += far.w[i] * f(y) * kernel_a(2.0, y) * y0 / (t * t);
    }
    return s;
}

// The delta(x) source is moved into the smooth part: with rho = rho_s + h delta,
// rho_s obeys the same equation with source s - h a_2.
inline double smooth_source(const DensitySource& s, double x) { return s.real_space(x) - s.hole * kernel_a(2.0, x); }

inline double tail_shape(int k, double y) { return k == 0 ? 1.0 : 1.0 / (1.0 + y * y); }

template <class F>
double tail_term(const std::array<double, 2>& c, double lmax, F&& f) {
    double v = 0.0;
    for (int k = 0; k < 2; ++k)
        if (c[static_cast<std::size_t>(k)] != 0.0)
            v += c[static_cast<std::size_t>(k)] * tail_integral(lmax, [&](double y) { return f(y) * tail_shape(k, y); });
    return v;
}

}  // namespace detail

inline double DensityProfile::operator()(double x) const {
    x = std::abs(x);
    double v = detail::smooth_source(source, x);
    for (std::size_t j = 0; j < grid.size(); ++j) v -= weights[j] * detail::folded_kernel(x, grid[j]) * rho[j];
    v -= detail::tail_term(tail, lambda_max, [&](double y) { return detail::folded_kernel(x, y); });
    return v;
}

inline double DensityProfile::filling() const {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) s += weights[j] * rho[j];
    s += detail::tail_term(tail, lambda_max, [](double) { return 1.0; });
    return 2.0 * s + source.hole;
}

inline double DensityProfile::a2_moment() const {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) s += weights[j] * kernel_a(2.0, grid[j]) * rho[j];
    s += detail::tail_term(tail, lambda_max, [](double y) { return kernel_a(2.0, y); });
    return 2.0 * s + source.hole * kernel_a(2.0, 0.0);
}

inline DensityProfile solve_density(const DensitySource& src, double Q0, const GridSpec& g = {}) {
    if (!(Q0 >= 0.0)) throw DomainError("Q0 must be nonnegative");
    if (!(g.lambda_max >= 20.0)) throw DomainError("lambda_max must be at least 20");
    if (!(Q0 < g.lambda_max)) throw DomainError("Q0 must lie below lambda_max");
    if (src.hole != 0.0 && Q0 != 0.0) throw DomainError("the hole term is defined at Q0 = 0 only");
    DensityProfile d;
    d.Q0 = Q0;
    d.lambda_max = g.lambda_max;
    d.source = src;
    const auto rule = uniform_panels(Q0, g.lambda_max, g.panel, g.order);
    d.grid = rule.x;
    d.weights = rule.w;
    const auto n = static_cast<Eigen::Index>(rule.size());
    if (n < 2 * g.order) throw DomainError("density grid needs at least two panels");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 2, n + 2);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = rule.x[static_cast<std::size_t>(i)];
        A(i, i) = 1.0;
        for (Eigen::Index j = 0; j < n; ++j)
            A(i, j) += rule.w[static_cast<std::size_t>(j)] * detail::folded_kernel(x, rule.x[static_cast<std::size_t>(j)]);
        for (int k = 0; k < 2; ++k)
            A(i, n + k) = detail::tail_integral(
                g.lambda_max, [&](double y) { return detail::folded_kernel(x, y) * detail::tail_shape(k, y); });
        b(i) = detail::smooth_source(src, x);
    }
    // Closure: the tail model passes through the outermost node of each of the last two panels.
    for (int c = 0; c < 2; ++c) {
        const Eigen::Index node = n - 1 - c * g.order;
        const double x = rule.x[static_cast<std::size_t>(node)];
        A(n + c, node) = 1.0;
        for (int k = 0; k < 2; ++k) A(n + c, n + k) = -detail::tail_shape(k, x) * kernel_a(2.0, x);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    d.rcond = lu.rcond();
    if (!(d.rcond > 1e-12)) throw ConvergenceError("density system ill-conditioned; refine the grid", d.rcond);
    const Eigen::VectorXd sol = lu.solve(b);
    d.rho.assign(sol.data(), sol.data() + n);
    d.tail = {sol(n), sol(n + 1)};
    return d;
}

inline DensityProfile solve_density(Regime r, const BoundaryParams& p, double Q0, double L, const GridSpec& g = {},
                                    bool with_hole = false) {
    auto d = solve_density(regime_source(r, p, L, with_hole), Q0, g);
    d.regime = r;
    d.L = L;
    return d;
}

/// sup |rho(x) - s(x) + int a_2 rho| at points between the nodes, with the
/// integral taken on a finer rule than the solve used.
inline double density_equation_residual(const DensityProfile& d, int samples = 100) {
    const auto fine = uniform_panels(d.Q0, d.lambda_max, 0.25, 20);
    std::vector<double> rho_fine(fine.size());
    for (std::size_t j = 0; j < fine.size(); ++j) rho_fine[j] = d(fine.x[j]);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double x = d.Q0 + (d.lambda_max - d.Q0) * (k + 0.37) / samples;
        double conv = 0.0;
        for (std::size_t j = 0; j < fine.size(); ++j) conv += fine.w[j] * detail::folded_kernel(x, fine.x[j]) * rho_fine[j];
        conv += detail::tail_term(d.tail, d.lambda_max, [&](double y) { return detail::folded_kernel(x, y); });
        worst = std::max(worst, std::abs(d(x) - detail::smooth_source(d.source, x) + conv));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Finite-interval form

/// (1/pi) int_0^inf cos(w x) e^{-a w} / (1 + e^{-w}) dw
inline double resolvent_transform(double a, double x) { return alternating_beta(cplx(a, x)).real() / kPi; }

struct InteriorSolution {
    DensitySource source;
    double Q0 = 0.0;
    QuadratureRule nodes;  // on [0, Q0]
    Eigen::VectorXd rho;   // rho at the nodes (continued inside |x| < Q0)

    /// Density at any x, the regular part.
    double operator()(double x) const {
        double v = 0.0;
        for (const auto& t : source.terms) v += t.coeff * resolvent_transform(0.5 * t.m, x);
        if (source.hole != 0.0) v -= source.hole * resolvent_transform(1.0, x);
        for (std::size_t j = 0; j < nodes.size(); ++j)
            v += nodes.w[j] * (resolvent_transform(1.0, x - nodes.x[j]) + resolvent_transform(1.0, x + nodes.x[j])) *
                 rho(static_cast<Eigen::Index>(j));
        return v;
    }

    double interior_moment(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) s += nodes.w[j] * f(nodes.x[j]) * rho(static_cast<Eigen::Index>(j));
        return 2.0 * s;
    }

    /// int_{|x|>Q0} rho
    double filling() const {
        double s0 = source.hole;
        for (const auto& t : source.terms) s0 += t.coeff;
        return 0.5 * s0 - 0.5 * interior_moment([](double) { return 1.0; });
    }

    /// int_{|x|>Q0} a_2 rho
    double a2_moment() const {
        double full = source.hole * alternating_beta(1.0);
        for (const auto& t : source.terms) full += t.coeff * alternating_beta(1.0 + 0.5 * t.m);
        full /= kPi;
        full += interior_moment([](double y) { return resolvent_transform(2.0, y); });
        return full - interior_moment([](double y) { return kernel_a(2.0, y); });
    }
};

inline InteriorSolution solve_interior(const DensitySource& src, double Q0, double panel = 1.0, int order = 12) {
    if (!(Q0 >= 0.0)) throw DomainError("Q0 must be nonnegative");
    if (src.hole != 0.0 && Q0 != 0.0) throw DomainError("the hole term is defined at Q0 = 0 only");
    InteriorSolution s;
    s.source = src;
    s.Q0 = Q0;
    if (Q0 == 0.0) return s;
    s.nodes = uniform_panels(0.0, Q0, panel, order);
    const auto n = static_cast<Eigen::Index>(s.nodes.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = s.nodes.x[static_cast<std::size_t>(i)];
        double v = 0.0;
        for (const auto& t : src.terms) v += t.coeff * resolvent_transform(0.5 * t.m, x);
        b(i) = v;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double y = s.nodes.x[static_cast<std::size_t>(j)];
            A(i, j) -= s.nodes.w[static_cast<std::size_t>(j)] * (resolvent_transform(1.0, x - y) + resolvent_transform(1.0, x + y));
        }
    }
    s.rho = A.partialPivLu().solve(b);
    return s;
}

/// Q0 such that the filling equals its target, by bisection on [0, lambda_max].
inline double find_q0(Regime r, const BoundaryParams& p, double n, double L, double lambda_max = 40.0,
                      double tol = 1e-10) {
    const auto src = regime_source(r, p, L);
    const double target = filling_target(r, n, L);
    auto filling = [&](double q) { return solve_interior(src, q).filling(); };
    const double f0 = filling(0.0);
    if (f0 <= target + tol) {
        if (f0 >= target - tol) return 0.0;
        throw DomainError("filling " + std::to_string(n) + " unreachable: even Q0 = 0 gives less");
    }
    if (filling(lambda_max) > target)
        throw DomainError("filling too small for Q0 <= lambda_max; widen the domain");
    double lo = 0.0, hi = lambda_max;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = filling(mid);
        if (std::abs(f - target) <= tol) return mid;
        (f > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Energies

struct EnergyReport {
    double total = 0.0;
    double bulk = 0.0;             // L times the L = infinity energy density
    double boundary_string = 0.0;  // 1/(xi'-xi'^2) and/or 1/(xi-xi^2)
    double hole = 0.0;             // 1/(mu_{N-1}^2 + 1/4), zero with mu_{N-1} at infinity
    double surface = 0.0;          // O(1) remainder of the density integral
    Regime regime = Regime::none;
    double n = 0.0;
    double L = kInf;
    double Q0 = 0.0;
    bool per_site = false;         // L = infinity: all values are per site
};

inline double boundary_string_energy(Regime r, const BoundaryParams& p) {
    const double bx = 1.0 / (p.xi - p.xi * p.xi), bxp = 1.0 / (p.xi_prime - p.xi_prime * p.xi_prime);
    switch (r) {
        case Regime::ii: return bxp;
        case Regime::iii: return bx;
        case Regime::iv: return bx + bxp;
        default: return 0.0;
    }
}

/// Energy of the density part per site, -2n + 2 pi int a_2 rho
/// (regime (i) written as -2 int rho (2 - 1/(1+x^2)), the same at the target filling).
inline double density_energy_per_site(Regime r, const InteriorSolution& s, double n) {
    if (r == Regime::i) return -2.0 * (2.0 * s.filling() - kPi * s.a2_moment());
    return -2.0 * n + 2.0 * kPi * s.a2_moment();
}

inline EnergyReport ground_energy(Regime r, const BoundaryParams& p, double n, double L, double lambda_max = 40.0) {
    require_regime(r, p);
    EnergyReport e;
    e.regime = r;
    e.n = n;
    e.L = L;
    const double q_inf = find_q0(r, p, n, kInf, lambda_max);
    const double e_inf = density_energy_per_site(r, solve_interior(regime_source(r, p, kInf), q_inf), n);
    if (!is_finite_length(L)) {
        e.per_site = true;
        e.Q0 = q_inf;
        e.total = e.bulk = e_inf;
        return e;
    }
    e.Q0 = find_q0(r, p, n, L, lambda_max);
    const double density_part = L * density_energy_per_site(r, solve_interior(regime_source(r, p, L), e.Q0), n);
    e.bulk = L * e_inf;
    e.surface = density_part - e.bulk;
    e.boundary_string = boundary_string_energy(r, p);
    e.total = e.bulk + e.surface + e.boundary_string + e.hole;
    return e;
}

}  // namespace tjlab
