#pragma once

#include <array>
#include <cmath>
#include <string>

#include "tjlab/common.hpp"

namespace tjlab {

/// Boundary parameters of the two reflection matrices. Angles in radians.
struct BoundaryParams {
    double xi = 1.0;
    double theta = 0.0;
    double phi = 0.0;
    double xi_prime = 0.0;
    double theta_prime = 0.0;
    double phi_prime = 0.0;

    /// Inhomogeneous-term constant: one minus the cosine of the angle between
    /// the two boundary field directions.
    double h() const {
        return 1.0 - (std::cos(theta) * std::cos(theta_prime) +
                      std::sin(theta) * std::sin(theta_prime) * std::cos(phi - phi_prime));
    }

    /// Same xi, xi' with both field directions along z, so h = 0.
    BoundaryParams homogeneous_companion() const {
        BoundaryParams q = *this;
        q.theta = q.phi = q.theta_prime = q.phi_prime = 0.0;
        return q;
    }
};

inline void validate(const BoundaryParams& p) {
    for (double v : {p.xi, p.theta, p.phi, p.xi_prime, p.theta_prime, p.phi_prime})
        if (!std::isfinite(v)) throw DomainError("boundary parameters must be finite reals");
    if (p.xi == 0.0) throw DomainError("xi = 0 is a pole of the boundary parameter map");
    if (p.xi_prime == 1.0) throw DomainError("xi' = 1 is a pole of the boundary parameter map");
}

/// Boundary chemical potentials and magnetic fields of the Hamiltonian.
struct BoundaryFields {
    double chi_1 = 0.0;
    double chi_L = 0.0;
    std::array<double, 3> h_1{0.0, 0.0, 0.0};
    std::array<double, 3> h_L{0.0, 0.0, 0.0};
};

inline BoundaryFields map_boundary_params(const BoundaryParams& p) {
    validate(p);
    BoundaryFields f;
    const double a = 1.0 / (2.0 * p.xi);
    const double b = 1.0 / (2.0 * (1.0 - p.xi_prime));
    f.chi_1 = -1.0 + a;
    f.h_1 = {-a * std::sin(p.theta) * std::cos(p.phi), -a * std::sin(p.theta) * std::sin(p.phi),
             a * std::cos(p.theta)};
    f.chi_L = -1.0 + b;
    f.h_L = {b * std::sin(p.theta_prime) * std::cos(p.phi_prime),
             b * std::sin(p.theta_prime) * std::sin(p.phi_prime), -b * std::cos(p.theta_prime)};
    return f;
}

/// Ground-state root pattern classes, split by the poles xi = 0 and xi' = 1.
enum class Regime { i, ii, iii, iv, none };

inline Regime classify(const BoundaryParams& p) {
    validate(p);
    const bool left = p.xi > 0.0;
    const bool right = p.xi_prime < 1.0;
    if (left && right) return Regime::i;
    if (left) return Regime::ii;
    if (right) return Regime::iii;
    return Regime::iv;
}

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::i: return "i";
        case Regime::ii: return "ii";
        case Regime::iii: return "iii";
        case Regime::iv: return "iv";
        default: return "none";
    }
}

inline Regime parse_regime(const std::string& s) {
    if (s == "i" || s == "1") return Regime::i;
    if (s == "ii" || s == "2") return Regime::ii;
    if (s == "iii" || s == "3") return Regime::iii;
    if (s == "iv" || s == "4") return Regime::iv;
    if (s == "none") return Regime::none;
    throw DomainError("unknown regime '" + s + "'");
}

inline bool consistent(Regime r, const BoundaryParams& p) {
    return r == Regime::none || classify(p) == r;
}

using Matrix3c = Eigen::Matrix3cd;

inline Matrix3c build_k_minus(cplx u, const BoundaryParams& p) {
    const cplx e = std::exp(kI * p.phi);
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    Matrix3c k = Matrix3c::Zero();
    k(0, 0) = p.xi + u;
    k(1, 1) = p.xi + c * u;
    k(1, 2) = s * e * u;
    k(2, 1) = s * std::conj(e) * u;
    k(2, 2) = p.xi - c * u;
    return k;
}

inline Matrix3c build_k_plus(cplx u, const BoundaryParams& p) {
    const cplx e = std::exp(kI * p.phi_prime);
    const double c = std::cos(p.theta_prime), s = std::sin(p.theta_prime);
    const double xp = p.xi_prime;
    Matrix3c k = Matrix3c::Zero();
    k(0, 0) = xp - u;
    k(1, 1) = xp - 0.5 - (1.0 - 2.0 * u) / 2.0 * c;
    k(1, 2) = (2.0 * u - 1.0) / 2.0 * s * e;
    k(2, 1) = (2.0 * u - 1.0) / 2.0 * s * std::conj(e);
    k(2, 2) = xp - 0.5 + (1.0 - 2.0 * u) / 2.0 * c;
    return k;
}

/// u-derivatives; both matrices are affine in u.
inline Matrix3c k_minus_slope(const BoundaryParams& p) {
    return build_k_minus(1.0, p) - build_k_minus(0.0, p);
}
inline Matrix3c k_plus_slope(const BoundaryParams& p) {
    return build_k_plus(1.0, p) - build_k_plus(0.0, p);
}

}  // namespace tjlab
