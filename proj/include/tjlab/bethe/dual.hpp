#pragma once

// Forward-mode dual numbers over C: value plus one holomorphic derivative.
// Residual functions are written once as templates over the scalar type and
// evaluated either with cplx or with CDual to get Jacobian columns.

#include <cmath>

#include "tjlab/common.hpp"

namespace tjlab {

struct CDual {
    cplx v{0.0};
    cplx d{0.0};

    CDual() = default;
    CDual(cplx value) : v(value) {}
    CDual(double value) : v(value) {}
    CDual(cplx value, cplx deriv) : v(value), d(deriv) {}

    CDual& operator+=(const CDual& o) { v += o.v; d += o.d; return *this; }
    CDual& operator-=(const CDual& o) { v -= o.v; d -= o.d; return *this; }
    CDual& operator*=(const CDual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    CDual& operator/=(const CDual& o) {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }
};

inline CDual operator+(CDual a, const CDual& b) { return a += b; }
inline CDual operator-(CDual a, const CDual& b) { return a -= b; }
inline CDual operator*(CDual a, const CDual& b) { return a *= b; }
inline CDual operator/(CDual a, const CDual& b) { return a /= b; }
inline CDual operator-(const CDual& a) { return {-a.v, -a.d}; }

inline CDual operator+(CDual a, cplx b) { a.v += b; return a; }
inline CDual operator+(cplx b, CDual a) { a.v += b; return a; }
inline CDual operator-(CDual a, cplx b) { a.v -= b; return a; }
inline CDual operator-(cplx b, const CDual& a) { return {b - a.v, -a.d}; }
inline CDual operator*(CDual a, cplx b) { a.v *= b; a.d *= b; return a; }
inline CDual operator*(cplx b, CDual a) { a.v *= b; a.d *= b; return a; }
inline CDual operator/(CDual a, cplx b) { a.v /= b; a.d /= b; return a; }
inline CDual operator/(cplx b, const CDual& a) { return CDual(b) / a; }

inline CDual operator+(CDual a, double b) { return a + cplx(b); }
inline CDual operator+(double b, CDual a) { return a + cplx(b); }
inline CDual operator-(CDual a, double b) { return a - cplx(b); }
inline CDual operator-(double b, const CDual& a) { return cplx(b) - a; }
inline CDual operator*(CDual a, double b) { return a * cplx(b); }
inline CDual operator*(double b, CDual a) { return a * cplx(b); }
inline CDual operator/(CDual a, double b) { return a / cplx(b); }

inline cplx value_of(const cplx& x) { return x; }
inline cplx value_of(const CDual& x) { return x.v; }

inline cplx ipow(const cplx& x, int n) {
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

inline CDual ipow(const CDual& x, int n) {
    if (n == 0) return CDual(1.0);
    const cplx lower = ipow(x.v, n - 1);
    return {lower * x.v, double(n) * lower * x.d};
}

// Real exponent on the principal branch; integral exponents stay exact.
inline cplx rpow(const cplx& x, double a) {
    if (a == std::floor(a) && a >= 0.0 && a < 1e6) return ipow(x, static_cast<int>(a));
    return std::pow(x, a);
}

inline CDual rpow(const CDual& x, double a) {
    if (a == std::floor(a) && a >= 0.0 && a < 1e6) return ipow(x, static_cast<int>(a));
    const cplx lower = std::pow(x.v, a - 1.0);
    return {lower * x.v, a * lower * x.d};
}

}  // namespace tjlab
