#pragma once

// Half-filling surface energies and Fourier-space densities.
//
// Each surface energy is  -int_R e^{-|w|} B(w) / (2 (1 + e^{-|w|})) dw  plus
// boundary-string constants, with the bracket B of the regime's half-filling
// density. The integrand is even, so the quadrature runs on [0, w_max]. Since
// int_0^inf e^{-a w} / (1 + e^{-w}) dw = beta(a), the same quantity is a short
// combination of alternating series, which serves as the oracle.

#include <cmath>
#include <vector>

#include "tjlab/continuum/density.hpp"

namespace tjlab {

struct SurfaceGrid {
    double w_max = 80.0;
    double panel = 0.25;
    int order = 16;
};

/// Exponents a and coefficients c with E_b = sum c * beta(a) + constants.
struct BetaCombination {
    std::vector<std::pair<double, double>> terms;  // (c, a)
    double constant = 0.0;

    double evaluate_series() const {
        double s = constant;
        for (const auto& [c, a] : terms) s += c * alternating_beta_series(a);
        return s;
    }
};

/// The closed-form integrand of E_b at w >= 0, full-line normalisation (the
/// factor 2 of folding already applied).
inline double surface_integrand(Regime r, const BoundaryParams& p, double w) {
    const double xi = p.xi, xp = p.xi_prime, e = std::exp(-w), den = 1.0 + e;
    switch (r) {
        case Regime::i:
            return -e * (std::exp(-0.5 * w) - std::exp(-xi * w) - std::exp(-(1.0 - xp) * w) + 1.0) / den;
        case Regime::ii:
            return -e * (std::exp(-0.5 * w) - std::exp(-xi * w) + std::exp(-xp * w) + 1.0) / den;
        case Regime::iii:
            return (std::exp((xp - 2.0) * w) - std::exp(-1.5 * w) - std::exp((xi - 2.0) * w) - e) / den;
        case Regime::iv:
            return -e * (std::exp(-0.5 * w) + std::exp(-(1.0 - xi) * w) + std::exp(-xp * w) + 1.0) / den;
        case Regime::none:
            break;
    }
    throw DomainError("surface energy needs a regime");
}

inline BetaCombination surface_beta_combination(Regime r, const BoundaryParams& p) {
    require_regime(r, p);
    const double xi = p.xi, xp = p.xi_prime;
    BetaCombination b;
    b.constant = boundary_string_energy(r, p);
    switch (r) {
        case Regime::i: b.terms = {{-1, 1.5}, {1, 1.0 + xi}, {1, 2.0 - xp}, {-1, 1.0}}; break;
        case Regime::ii: b.terms = {{-1, 1.5}, {1, 1.0 + xi}, {-1, 1.0 + xp}, {-1, 1.0}}; break;
        case Regime::iii: b.terms = {{1, 2.0 - xp}, {-1, 1.5}, {-1, 2.0 - xi}, {-1, 1.0}}; break;
        case Regime::iv: b.terms = {{-1, 1.5}, {-1, 2.0 - xi}, {-1, 1.0 + xp}, {-1, 1.0}}; break;
        case Regime::none: break;
    }
    return b;
}

/// E_b by quadrature of the closed-form integrand plus the boundary-string constants.
inline double surface_energy(Regime r, const BoundaryParams& p, const SurfaceGrid& g = {}) {
    require_regime(r, p);
    // Slowest exponential decides whether [0, w_max] captures the integral.
    double slowest = 1.0;
    for (const auto& [c, a] : surface_beta_combination(r, p).terms) slowest = std::min(slowest, a);
    if (!(slowest > 0.0) || slowest * g.w_max < 37.0)
        throw DomainError("surface integrand decays too slowly for w_max = " + std::to_string(g.w_max));
    const auto rule = decay_panels(g.w_max, g.panel, g.order);
    return rule.integrate([&](double w) { return surface_integrand(r, p, w); }) + boundary_string_energy(r, p);
}

inline double surface_energy_oracle(Regime r, const BoundaryParams& p) {
    return surface_beta_combination(r, p).evaluate_series();
}

/// The closed-form half-filling densities in Fourier space, hole terms of the
/// real root mu_{N-1} dropped. L = infinity gives e^{-|w|}/(1 + e^{-|w|}).
inline double halffilling_density_fourier(Regime r, const BoundaryParams& p, double w, double L) {
    require_regime(r, p);
    const double a = std::abs(w), e = std::exp(-a), den = 1.0 + e;
    if (!is_finite_length(L)) return e / den;
    const double xi = p.xi, xp = p.xi_prime;
    switch (r) {
        case Regime::i:
            return e / den - (std::exp(-0.5 * a) - std::exp(-(1.0 - xp) * a) - std::exp(-xi * a) + 1.0) / (2.0 * L * den);
        case Regime::ii:
            return (2.0 * L * e - std::exp(-xp * a) + std::exp(-xi * a) - std::exp(-0.5 * a) + 1.0) / (2.0 * L * den);
        case Regime::iii:
            return e / den -
                   (std::exp(-0.5 * a) - std::exp(-(1.0 - xp) * a) + std::exp(-(1.0 - xi) * a) + 1.0) / (2.0 * L * den);
        case Regime::iv:
            return e / den - (std::exp(-0.5 * a) + std::exp(-(1.0 - xi) * a) + std::exp(-xp * a) + 1.0) / (2.0 * L * den);
        case Regime::none:
            break;
    }
    return 0.0;
}

/// (1/pi) int_0^w_max cos(w x) f(w) dw: inverse transform of an even, decaying f.
template <class F>
double inverse_cosine_transform(F&& f, double x, const SurfaceGrid& g = {}) {
    const auto rule = decay_panels(g.w_max, std::min(g.panel, 0.1), g.order);
    return rule.integrate([&](double w) { return std::cos(w * x) * f(w); }) / kPi;
}

/// Smooth real-space part of the half-filling density from the closed-form
/// Fourier form. The constant the form tends to at large w is a delta(x);
/// it is removed before transforming.
inline double halffilling_density_real(Regime r, const BoundaryParams& p, double x, double L, const SurfaceGrid& g = {}) {
    const double spike = regime_source(r, p, L, true).hole;
    return inverse_cosine_transform([&](double w) { return halffilling_density_fourier(r, p, w, L) - spike; }, x, g);
}

}  // namespace tjlab
