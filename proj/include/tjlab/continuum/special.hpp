#pragma once

// beta(z) = sum_{k>=0} (-1)^k / (z + k) = [psi((z+1)/2) - psi(z/2)] / 2
// It is the Laplace-type integral int_0^inf e^{-z w} / (1 + e^{-w}) dw, which
// every half-filling and density expression here reduces to.

#include <cmath>
#include <complex>

#include "tjlab/common.hpp"

namespace tjlab {

/// Complex digamma for Re z > 0: upward recurrence to |z| >= 12, then the
/// asymptotic series (Bernoulli terms through z^-14).
inline cplx digamma(cplx z) {
    if (!(z.real() > 0.0)) throw DomainError("digamma implemented for Re z > 0 only");
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    const cplx r = 1.0 / z, r2 = r * r;
    const cplx tail =
        r2 * (1.0 / 12 - r2 * (1.0 / 120 - r2 * (1.0 / 252 - r2 * (1.0 / 240 - r2 * (1.0 / 132 - r2 * (691.0 / 32760 - r2 / 12.0))))));
    return shift + std::log(z) - 0.5 * r - tail;
}

inline cplx alternating_beta(cplx z) { return 0.5 * (digamma(0.5 * (z + 1.0)) - digamma(0.5 * z)); }
inline double alternating_beta(double a) { return alternating_beta(cplx(a, 0.0)).real(); }

/// The same function summed directly: partial sums of sum (-1)^k/(a+k),
/// then repeated averaging of neighbouring partial sums. Used as an
/// independent check of closed-form and quadrature values.
inline double alternating_beta_series(double a, int terms = 4000, int levels = 4) {
    if (!(a > 0.0)) throw DomainError("alternating series needs a > 0");
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(levels) + 1);
    double s = 0.0;
    int k = 0;
    for (; k < terms; ++k) s += (k % 2 ? -1.0 : 1.0) / (a + k);
    for (int j = 0; j <= levels; ++j, ++k) {
        partial.push_back(s);
        s += (k % 2 ? -1.0 : 1.0) / (a + k);
    }
    for (int lvl = 0; lvl < levels; ++lvl)
        for (std::size_t i = 0; i + 1 < partial.size() - static_cast<std::size_t>(lvl); ++i)
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    return partial.front();
}

}  // namespace tjlab
