#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tjlab/algebra/hamiltonian.hpp"
#include "tjlab/algebra/integrability.hpp"
#include "tjlab/algebra/spectrum.hpp"
#include "tjlab/algebra/transfer.hpp"
#include "tjlab/bethe/certify.hpp"
#include "tjlab/bethe/reduced.hpp"
#include "tjlab/continuum/density.hpp"
#include "tjlab/continuum/surface.hpp"
#include "tjlab/scaling/power_law.hpp"

using namespace tjlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const std::vector<Regime> kRegimes{Regime::i, Regime::ii, Regime::iii, Regime::iv};

BoundaryParams scaling_set(Regime r) {
    switch (r) {
        case Regime::i: return {0.413, kPi / 3, 0.0, -3.0, 0.0, 0.0};
        case Regime::ii: return {0.413, kPi / 3, 0.0, 2.413, 0.0, 0.0};
        case Regime::iii: return {-0.413, kPi / 3, 0.0, 0.613, 0.0, 0.0};
        default: return {-0.413, kPi / 3, 0.0, 2.413, 0.0, 0.0};
    }
}

BoundaryParams filling_set(Regime r) {
    switch (r) {
        case Regime::i: return {1.9, kPi / 3, 0.0, 0.5, 0.0, 0.0};
        case Regime::ii: return {0.9, kPi / 3, 0.0, 1.123, 0.0, 0.0};
        case Regime::iii: return {-0.9, kPi / 3, 0.0, -0.9, 0.0, 0.0};
        default: return {-0.9, kPi / 3, 0.0, 2.9, 0.0, 0.0};
    }
}

std::vector<BoundaryParams> surface_grid(Regime r) {
    std::vector<std::pair<double, double>> xx;
    switch (r) {
        case Regime::i: xx = {{0.05, -3}, {0.413, 0.5}, {1.0, 0.0}, {1.9, 0.9}, {6.0, -10}}; break;
        case Regime::ii: xx = {{0.05, 1.05}, {0.413, 2.413}, {0.9, 1.123}, {1.9, 4.0}, {6.0, 1.5}}; break;
        case Regime::iii: xx = {{-0.05, -0.9}, {-0.413, 0.613}, {-0.9, -3.0}, {-2.0, 0.95}, {-6.0, 0.0}}; break;
        default: xx = {{-0.05, 1.05}, {-0.413, 2.413}, {-0.9, 2.9}, {-2.0, 1.5}, {-6.0, 6.0}}; break;
    }
    std::vector<BoundaryParams> out;
    for (auto [a, b] : xx) out.push_back({a, kPi / 3, 0, b, 0, 0});
    return out;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome identity_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> xi(0.2, 2.0), ang(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const BoundaryParams p{xi(rng), ang(rng), ang(rng), -xi(rng), ang(rng), ang(rng)};
        worst = std::max(worst, verify_integrability(p, 100, 100 + k).max());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-12 && secs < 5.0, fmt("max residual %.2e over 20x100, %.2f s", worst, secs)};
}

Outcome commuting_family() {
    const auto t0 = std::chrono::steady_clock::now();
    const BoundaryParams p{0.7, 0.9, 0.4, -0.3, 1.2, 2.1};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-0.5, 0.5);
    double comm = 0.0;
    for (int L : {2, 3, 4}) {
        FockBasis b(L);
        for (int k = 0; k < 10; ++k) {
            const MatrixXc t1 = transfer_matrix({c(rng), c(rng)}, p, b), t2 = transfer_matrix({c(rng), c(rng)}, p, b);
            comm = std::max(comm, (t1 * t2 - t2 * t1).norm());
        }
    }
    double ham = 0.0;
    for (int L : {2, 3}) {
        const MatrixXc hd = build_hamiltonian(L, map_boundary_params(p)).dense();
        ham = std::max(ham, (hd - hamiltonian_from_transfer(L, p)).norm() / hd.norm());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {comm <= 1e-10 && ham <= 1e-6 && secs < 60.0,
            fmt("||[t(u),t(v)]|| %.2e, Hamiltonian rel. residual %.2e, %.2f s", comm, ham, secs)};
}

Outcome tq_certification() {
    double mis = 0.0, de = 0.0;
    bool ok = true;
    for (Regime r : kRegimes) {
        const auto c = certify_tq(scaling_set(r), 2, 2, 6000);
        ok = ok && c.certified > 0;
        mis = std::max(mis, c.lambda_mismatch);
        de = std::max(de, std::abs(c.e_bae - c.e_ed));
    }
    return {ok && mis <= 1e-8 && de <= 1e-8, fmt("L=2 eigenvalue mismatch %.2e, |E_bae - E_ed| %.2e", mis, de)};
}

Outcome bulk_energy() {
    const double e = ground_energy(Regime::i, filling_set(Regime::i), 1.0, kInf).total;
    const double err = std::abs(e + 2.0 * std::log(2.0));
    return {err <= 1e-9, fmt("E/L = %.12f, error %.2e", e, err)};
}

Outcome surface_energies() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (Regime r : kRegimes)
        for (const auto& p : surface_grid(r)) worst = std::max(worst, std::abs(surface_energy(r, p) - surface_energy_oracle(r, p)));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-10 && secs < 10.0, fmt("quadrature vs series %.2e over 4x5 grid, %.2f s", worst, secs)};
}

Outcome half_filling() {
    double worst = 0.0;
    for (Regime r : kRegimes) {
        const auto p = filling_set(r);
        for (double L : {10.0, kInf}) {
            const auto d = solve_density(r, p, 0.0, L, {}, is_finite_length(L));
            for (int k = 0; k <= 50; ++k)
                worst = std::max(worst, std::abs(d(0.1 * k) - halffilling_density_real(r, p, 0.1 * k, L)));
        }
    }
    return {worst <= 1e-6, fmt("sup |Fredholm - Fourier| %.2e", worst)};
}

Outcome scaling_law() {
    bool ok = true;
    std::string detail;
    for (Regime r : kRegimes) {
        const auto p = scaling_set(r);
        std::vector<ScalingPoint> pts;
        for (int L : {4, 6, 8, 10})
            pts.push_back({double(L), delta_e(ground_energy_ed(L, p, L), energy_reduced(solve_reduced_ground_state(r, L, L, p)))});
        const auto f = fit_power_law(pts);
        ok = ok && f.beta < 0.0 && f.r_squared > 0.95;
        detail += to_string(r) + ": beta " + fmt("%.3f r2 %.5f", f.beta, f.r_squared) + (r == Regime::iv ? "" : "; ");
    }
    return {ok, detail};
}

Outcome extrapolation() {
    double worst = 0.0;
    for (Regime r : kRegimes) {
        const auto p = filling_set(r);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int L : {6, 8, 10}) {
            const double x = 1.0 / L, y = ground_energy_ed(L, p, L) + 2.0 * L * std::log(2.0);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx), intercept = (sy - slope * sx) / 3;
        const double eb = surface_energy(r, p);
        worst = std::max(worst, std::abs(intercept - eb) / std::abs(eb));
    }
    return {worst <= 0.05, fmt("worst relative deviation %.2f%%", 100 * worst)};
}

Outcome property_suite() {
    std::vector<std::string> failed;

    double sign = 0.0;
    for (Regime r : kRegimes) {
        const auto p = scaling_set(r);
        const auto roots = solve_reduced_ground_state(r, 6, 6, p).to_shifted();
        const auto base = reduced_bae_residual(roots, p);
        auto probe = [&](RootConfiguration f) {
            const auto flipped = reduced_bae_residual(f, p);
            for (std::size_t e = 0; e < base.size(); ++e)
                sign = std::max(sign, std::abs(std::abs(flipped[e]) - std::abs(base[e])) / std::max(1.0, std::abs(base[e])));
        };
        for (std::size_t k = 0; k < roots.v.size(); ++k) {
            auto f = roots;
            f.v[k] = -f.v[k];
            probe(f);
        }
        for (std::size_t k = 0; k < roots.l.size(); ++k) {
            auto f = roots;
            f.l[k] = -f.l[k];
            probe(f);
        }
    }
    if (sign > 1e-9) failed.push_back("sign symmetry");

    for (Regime r : kRegimes) {
        const auto src = regime_source(r, filling_set(r), 30.0);
        double prev = kInf;
        for (int k = 0; k < 10; ++k) {
            const double f = solve_interior(src, 0.4 * k).filling();
            if (!(f < prev)) failed.push_back("filling monotonicity " + to_string(r));
            prev = f;
        }
    }

    double drift = 0.0;
    for (Regime r : kRegimes)
        drift = std::max(drift, std::abs(surface_energy(r, filling_set(r), {80, 0.125, 16}) - surface_energy(r, filling_set(r))));
    if (drift > 1e-8) failed.push_back("grid refinement");

    const BoundaryParams g{0.7, 0.9, 0.4, -0.3, 1.2, 2.1};
    const KMatrixFn bad = [&g](cplx u) {
        Matrix3c k = build_k_minus(u, g);
        k(1, 2) = -k(1, 2);
        return k;
    };
    const double corrupted = verify_integrability(g, 5, 3, bad).reflection;
    if (corrupted <= 1e-3) failed.push_back("corrupted K-matrix not detected");

    TransferHamiltonianOptions opt;
    opt.include_chain_constant = false;
    const MatrixXc hd = build_hamiltonian(3, map_boundary_params(g)).dense();
    const double dropped = (hd - hamiltonian_from_transfer(3, g, std::nullopt, opt)).norm() / hd.norm();
    if (dropped <= 1e-3) failed.push_back("dropped constant not detected");

    std::string detail = fmt("sign %.1e, drift %.1e, ", sign, drift) + fmt("mutations %.1e / %.1e", corrupted, dropped);
    for (const auto& f : failed) detail += "; " + f;
    return {failed.empty(), detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"identity suite", identity_suite},     {"commuting family", commuting_family},
        {"T-Q certification", tq_certification}, {"bulk energy", bulk_energy},
        {"surface energies", surface_energies},  {"half-filling consistency", half_filling},
        {"scaling law", scaling_law},            {"finite-size extrapolation", extrapolation},
        {"property suite", property_suite}};
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
