#pragma once

#include <cmath>
#include <concepts>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "tjlab/bethe/dual.hpp"

namespace tjlab {

struct NewtonOptions {
    int max_iterations = 500;
    double tolerance = 1e-12;
    int max_halvings = 20;
    int max_jitters = 3;
    double jitter = 1e-8;
    std::uint64_t seed = 7;
};

struct NewtonResult {
    VectorXc x;
    double residual = 0.0;
    int iterations = 0;
    int jitters = 0;
    bool converged = false;
};

/// Residual functor contract: `template <class T> std::vector<T> operator()(const std::vector<T>&) const`.
/// A functor may also provide `std::vector<double> scales(const std::vector<cplx>&) const`; each
/// equation is then divided by its scale, frozen over one Newton iteration.
template <class Residual>
concept ScaledResidual = requires(const Residual& f, const std::vector<cplx>& x) {
    { f.scales(x) } -> std::convertible_to<std::vector<double>>;
};

template <class Residual>
Eigen::VectorXd residual_weights(const Residual& f, const VectorXc& x) {
    Eigen::VectorXd w;
    if constexpr (ScaledResidual<Residual>) {
        const auto s = f.scales(std::vector<cplx>(x.data(), x.data() + x.size()));
        w.resize(static_cast<Eigen::Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            w(static_cast<Eigen::Index>(i)) = s[i] > 0.0 && std::isfinite(s[i]) ? 1.0 / s[i] : 1.0;
    } else {
        w = Eigen::VectorXd::Ones(f(std::vector<cplx>(x.data(), x.data() + x.size())).size());
    }
    return w;
}

template <class Residual>
VectorXc evaluate_residual(const Residual& f, const VectorXc& x) {
    std::vector<cplx> in(x.data(), x.data() + x.size());
    const auto out = f(in);
    return Eigen::Map<const VectorXc>(out.data(), static_cast<Eigen::Index>(out.size()));
}

template <class Residual>
MatrixXc evaluate_jacobian(const Residual& f, const VectorXc& x) {
    const auto n = x.size();
    std::vector<CDual> in(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = CDual(x(i));
    MatrixXc jac;
    for (Eigen::Index j = 0; j < n; ++j) {
        in[static_cast<std::size_t>(j)].d = 1.0;
        const auto col = f(in);
        if (jac.size() == 0) jac.resize(static_cast<Eigen::Index>(col.size()), n);
        for (std::size_t i = 0; i < col.size(); ++i) jac(static_cast<Eigen::Index>(i), j) = col[i].d;
        in[static_cast<std::size_t>(j)].d = 0.0;
    }
    return jac;
}

inline double max_abs(const VectorXc& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

/// Damped Newton: full step, halved up to max_halvings times while the
/// weighted residual norm grows. A rank-deficient Jacobian triggers a random
/// perturbation of relative size `jitter` of the iterate, at most max_jitters times.
/// Convergence is judged on the weighted residual.
template <class Residual>
NewtonResult damped_newton(const Residual& f, VectorXc x, const NewtonOptions& opt = {}) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    NewtonResult res;
    Eigen::VectorXd w = residual_weights(f, x);
    VectorXc r = evaluate_residual(f, x);
    for (int it = 0; it < opt.max_iterations; ++it) {
        res.iterations = it;
        if (!r.allFinite()) break;
        w = residual_weights(f, x);
        if (max_abs(w.cwiseProduct(r)) <= opt.tolerance) {
            res.converged = true;
            break;
        }
        MatrixXc jac = w.asDiagonal() * evaluate_jacobian(f, x);
        // Column equilibration: unknowns may differ by many decades
        // (string deviations next to string centers).
        Eigen::VectorXd cs(jac.cols());
        for (Eigen::Index j = 0; j < jac.cols(); ++j) {
            const double n = jac.col(j).norm();
            cs(j) = n > 0.0 && std::isfinite(n) ? 1.0 / n : 1.0;
        }
        jac = jac * cs.asDiagonal();
        Eigen::ColPivHouseholderQR<MatrixXc> qr(jac);
        if (qr.rank() < jac.cols() || !jac.allFinite()) {
            if (res.jitters >= opt.max_jitters) break;
            ++res.jitters;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                const double size = std::abs(x(i)) > 0.0 ? std::abs(x(i)) : 1.0;
                x(i) += opt.jitter * size * cplx(gauss(rng), gauss(rng));
            }
            r = evaluate_residual(f, x);
            continue;
        }
        const VectorXc step = cs.asDiagonal() * qr.solve(-w.cwiseProduct(r));
        const double base = w.cwiseProduct(r).norm();
        double t = 1.0;
        VectorXc trial = x + step;
        VectorXc rt = evaluate_residual(f, trial);
        for (int h = 0; h < opt.max_halvings && (!rt.allFinite() || w.cwiseProduct(rt).norm() > base); ++h) {
            t *= 0.5;
            trial = x + t * step;
            rt = evaluate_residual(f, trial);
        }
        x = std::move(trial);
        r = std::move(rt);
    }
    if (r.allFinite()) {
        w = residual_weights(f, x);
        res.residual = max_abs(w.cwiseProduct(r));
        if (res.residual <= opt.tolerance) res.converged = true;
    } else {
        res.residual = kInf;
    }
    res.x = std::move(x);
    return res;
}

}  // namespace tjlab
