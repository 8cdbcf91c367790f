#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tjlab/common.hpp"

namespace tjlab {

struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;

    std::size_t size() const { return x.size(); }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
        return s;
    }
};

/// Gauss-Legendre nodes on [-1, 1] from the Jacobi matrix (Golub-Welsch).
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule r;
    for (int k = 0; k < n; ++k) {
        r.x.push_back(es.eigenvalues()(k));
        const double v = es.eigenvectors()(0, k);
        r.w.push_back(2.0 * v * v);
    }
    return r;
}

/// Composite rule with the given panel edges.
inline QuadratureRule composite_rule(const std::vector<double>& edges, int order) {
    const auto base = gauss_legendre(order);
    QuadratureRule r;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1], half = 0.5 * (b - a), mid = 0.5 * (a + b);
        if (!(b > a)) continue;
        for (std::size_t k = 0; k < base.size(); ++k) {
            r.x.push_back(mid + half * base.x[k]);
            r.w.push_back(half * base.w[k]);
        }
    }
    return r;
}

/// Panels of width at most `h` on [a, b].
inline QuadratureRule uniform_panels(double a, double b, double h, int order) {
    if (!(b > a)) return {};
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-12)));
    std::vector<double> edges;
    for (int i = 0; i <= n; ++i) edges.push_back(a + (b - a) * i / n);
    return composite_rule(edges, order);
}

/// Rule for [0, w_max] resolving exponentials e^{-a w} up to a ~ 2^levels:
/// geometric panels down to 2^-levels near zero, then width h.
inline QuadratureRule decay_panels(double w_max, double h, int order, int levels = 12) {
    std::vector<double> edges{0.0};
    for (int k = levels; k >= 1; --k) {
        const double e = std::ldexp(h, -k);
        edges.push_back(e);
    }
    const int n = static_cast<int>(std::ceil((w_max - h) / h - 1e-12));
    for (int i = 0; i <= n; ++i) edges.push_back(std::min(w_max, h + i * h));
    return composite_rule(edges, order);
}

}  // namespace tjlab
