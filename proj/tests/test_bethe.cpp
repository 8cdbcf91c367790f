#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "tjlab/algebra/spectrum.hpp"
#include "tjlab/bethe/certify.hpp"
#include "tjlab/bethe/log_bae.hpp"
#include "tjlab/bethe/reduced.hpp"
#include "tjlab/continuum/density.hpp"
#include "tjlab/continuum/quadrature.hpp"

using namespace tjlab;

namespace {

// The four scaling-law parameter sets, one per regime.
BoundaryParams regime_params(Regime r) {
    switch (r) {
        case Regime::i: return {0.413, kPi / 3, 0.0, -3.0, 0.0, 0.0};
        case Regime::ii: return {0.413, kPi / 3, 0.0, 2.413, 0.0, 0.0};
        case Regime::iii: return {-0.413, kPi / 3, 0.0, 0.613, 0.0, 0.0};
        default: return {-0.413, kPi / 3, 0.0, 2.413, 0.0, 0.0};
    }
}

const std::vector<Regime> kRegimes{Regime::i, Regime::ii, Regime::iii, Regime::iv};

const TqCertificate& certificate(Regime r) {
    static std::map<Regime, TqCertificate> cache;
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, certify_tq(regime_params(r), 2, 2, 6000)).first;
    return it->second;
}

double max_abs(const std::vector<cplx>& xs) {
    double m = 0.0;
    for (const auto& x : xs) m = std::max(m, std::abs(x));
    return m;
}

// Each cleared equation balances terms of size up to ~1e6 at L = 2, so its
// residual is measured against the size of those terms.
double scaled_residual(const RootConfiguration& roots, const BoundaryParams& p) {
    const auto r = roots.to_raw();
    const auto t = detail::inhom_terms(r.v, r.l, p, p.h(), r.L);
    const auto res = inhom_bae_residual(r, p);
    double worst = 0.0;
    for (std::size_t k = 0; k < res.size(); ++k) {
        double scale = std::abs(t.first[k]) + std::abs(t.second[k]) + std::abs(t.third[k]);
        if (k < r.v.size()) scale *= std::abs((r.v[k] - 0.5) * (r.v[k] + p.xi));
        worst = std::max(worst, std::abs(res[k]) / std::max(scale, 1e-300));
    }
    return worst;
}

double sector_sz(const RootConfiguration& r) { return r.M - 0.5 * r.N; }

}  // namespace

class TqCertification : public ::testing::TestWithParam<Regime> {};

TEST_P(TqCertification, LowestCertifiedStateMatchesExactDiagonalisation) {
    const auto& c = certificate(GetParam());
    ASSERT_GT(c.certified, 0);
    EXPECT_LE(c.lambda_mismatch, 1e-8);
    EXPECT_NEAR(c.e_bae, c.e_ed, 1e-8);
}

TEST_P(TqCertification, EigenvalueIsRegularAtTheRoots) {
    const auto& c = certificate(GetParam());
    ASSERT_GT(c.certified, 0);
    const BoundaryParams p = regime_params(GetParam());
    for (const auto& v : c.roots.to_raw().v) EXPECT_LE(std::abs(tq_residue(v, c.roots, p)), 1e-10) << v;
}

TEST_P(TqCertification, PolynomialResidualVanishesAndIsSensitive) {
    const auto& c = certificate(GetParam());
    ASSERT_GT(c.certified, 0);
    const BoundaryParams p = regime_params(GetParam());
    EXPECT_LE(scaled_residual(c.roots, p), 1e-10);
    RootConfiguration moved = c.roots.to_raw();
    moved.v[0] += 1e-3;
    EXPECT_GE(scaled_residual(moved, p), 1e-6);
    EXPECT_GE(max_abs(inhom_bae_residual(moved, p)), 1e-6);
}

TEST_P(TqCertification, EnergyFromLogDerivativeAgrees) {
    const auto& c = certificate(GetParam());
    ASSERT_GT(c.certified, 0);
    EXPECT_NEAR(energy_from_tq(c.roots, regime_params(GetParam())), c.e_bae, 1e-6);
}

TEST_P(TqCertification, MirroringARootLeavesEigenvalueUnchanged) {
    const auto& c = certificate(GetParam());
    ASSERT_GT(c.certified, 0);
    const BoundaryParams p = regime_params(GetParam());
    RootConfiguration m = c.roots.to_raw();
    for (auto& v : m.v) v = -v - 1.0;
    const cplx u{0.31, -0.72};
    EXPECT_LE(std::abs(eval_inhom_tq(u, m, p) - eval_inhom_tq(u, c.roots, p)), 1e-10 * std::abs(eval_inhom_tq(u, c.roots, p)));
    EXPECT_NEAR(energy_inhom(m, 1e-7), c.e_bae, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Regimes, TqCertification, ::testing::ValuesIn(kRegimes),
                         [](const auto& info) { return "regime_" + to_string(info.param); });

TEST(InhomogeneousBae, DifferentSeedsGiveTheSameEigenvalue) {
    const BoundaryParams p = regime_params(Regime::i);
    const auto a = certify_tq(p, 2, 2, 2000, 2024), b = certify_tq(p, 2, 2, 2000, 77);
    ASSERT_GT(a.certified, 0);
    ASSERT_GT(b.certified, 0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-1.5, 1.5);
    for (int k = 0; k < 5; ++k) {
        const cplx u{c(rng), c(rng)};
        const cplx la = eval_inhom_tq(u, a.roots, p), lb = eval_inhom_tq(u, b.roots, p);
        EXPECT_LE(std::abs(la - lb), 1e-8 * std::max(1.0, std::abs(la)));
    }
}

TEST(InhomogeneousBae, ClearedFormIsRatioFormTimesDenominators) {
    const BoundaryParams p = regime_params(Regime::ii);
    RootConfiguration r;
    r.L = 3;
    r.N = r.M = 2;
    r.v = {{0.3, 0.7}, {-1.1, 0.2}};
    r.l = {{0.45, -0.35}, {0.9, 1.3}};
    const auto cleared = inhom_bae_residual(r, p), ratio = inhom_bae_ratio_residual(r, p);
    const auto factor = inhom_bae_clearing_factors(r);
    ASSERT_EQ(cleared.size(), ratio.size());
    for (std::size_t k = 0; k < cleared.size(); ++k)
        EXPECT_LE(std::abs(cleared[k] - ratio[k] * factor[k]), 1e-12 * std::max(1.0, std::abs(cleared[k]))) << k;
}

TEST(InhomogeneousBae, HomogeneousParametersKillTheFourthTerm) {
    const BoundaryParams p = regime_params(Regime::iii).homogeneous_companion();
    RootConfiguration r;
    r.L = 3;
    r.N = r.M = 1;
    r.v = {{0.2, 0.9}};
    r.l = {{-0.6, 0.4}};
    for (const cplx u : {cplx(0.3, 0.1), cplx(-1.7, 2.2), cplx(4.0, -0.5)})
        EXPECT_EQ(tq_terms(u, r, p, p.h()).inhomogeneous, cplx(0.0));
}

TEST(InhomogeneousBae, AdmissibilityRejectsForcedZeros) {
    const BoundaryParams p = regime_params(Regime::i);
    RootConfiguration r;
    r.L = 2;
    r.N = r.M = 2;
    r.v = {{0.3, 0.7}, {-1.3, -0.7}};  // mirrored pair v, -v-1
    r.l = {{0.4, 0.1}, {1.0, 0.0}};
    EXPECT_FALSE(is_admissible(r, p));
    r.v[1] = {0.9, 0.2};
    EXPECT_TRUE(is_admissible(r, p));
    r.l[1] = 0.0;
    EXPECT_FALSE(is_admissible(r, p));
}

TEST(Energy, ShiftedRootTermIsLorentzian) {
    const double mu = 0.83;
    RootConfiguration r;
    r.representation = Representation::shifted;
    r.v = {mu};
    r.N = 1;
    EXPECT_NEAR(energy_inhom(r) + 2.0, 1.0 / (mu * mu + 0.25), 1e-14);
}

TEST(Energy, EmptyConfigurationHasZeroEnergy) {
    RootConfiguration r;
    EXPECT_EQ(energy_inhom(r), 0.0);
    EXPECT_EQ(energy_reduced(r), 0.0);
}

TEST(Energy, TwoStringContribution) {
    const double lambda = 0.71;
    RootConfiguration r;
    r.representation = Representation::shifted;
    r.v = {cplx(lambda, 0.5), cplx(lambda, -0.5)};
    r.l = {lambda};
    r.N = 2;
    r.M = 1;
    EXPECT_NEAR(energy_reduced(r), 2.0 / (lambda * lambda + 1.0) - 4.0, 1e-14);
}

class ReducedGroundState : public ::testing::TestWithParam<Regime> {};

TEST_P(ReducedGroundState, MatchesSectorResolvedDiagonalisation) {
    const Regime reg = GetParam();
    const BoundaryParams hom = regime_params(reg).homogeneous_companion();
    for (int L : {4, 6}) {
        const auto r = solve_reduced_ground_state(reg, L, L, regime_params(reg));
        EXPECT_NEAR(energy_reduced(r), ground_energy_ed(L, hom, L, sector_sz(r)), 1e-9) << "L=" << L;
    }
}

TEST_P(ReducedGroundState, RootSetIsClosedUnderSignFlip) {
    const Regime reg = GetParam();
    const BoundaryParams p = regime_params(reg);
    const auto r = solve_reduced_ground_state(reg, 6, 6, p).to_shifted();
    const auto base = reduced_bae_residual(r, p);
    for (std::size_t k = 0; k < r.v.size(); ++k) {
        RootConfiguration f = r;
        f.v[k] = -f.v[k];
        const auto flipped = reduced_bae_residual(f, p);
        for (std::size_t e = 0; e < base.size(); ++e)
            EXPECT_NEAR(std::abs(flipped[e]), std::abs(base[e]), 1e-9 * std::max(1.0, std::abs(base[e])));
    }
    for (std::size_t k = 0; k < r.l.size(); ++k) {
        RootConfiguration f = r;
        f.l[k] = -f.l[k];
        const auto flipped = reduced_bae_residual(f, p);
        for (std::size_t e = 0; e < base.size(); ++e)
            EXPECT_NEAR(std::abs(flipped[e]), std::abs(base[e]), 1e-9 * std::max(1.0, std::abs(base[e])));
    }
}

TEST_P(ReducedGroundState, RootsStayOffThePoles) {
    const auto r = solve_reduced_ground_state(GetParam(), 6, 6, regime_params(GetParam())).to_shifted();
    for (const auto& mu : r.v) {
        EXPECT_GT(std::abs(mu - 0.5 * kI), 1e-12);
        EXPECT_GT(std::abs(mu + 0.5 * kI), 1e-12);
    }
    EXPECT_TRUE(is_admissible_reduced(r));
}

TEST_P(ReducedGroundState, ZeroInhomogeneityGivesZeroDeltaE) {
    const Regime reg = GetParam();
    const BoundaryParams hom = regime_params(reg).homogeneous_companion();
    const auto r = solve_reduced_ground_state(reg, 6, 6, hom);
    EXPECT_LE(delta_e(ground_energy_ed(6, hom, 6, sector_sz(r)), energy_reduced(r)), 1e-9);
}

TEST_P(ReducedGroundState, DeltaEPositiveAndShrinking) {
    const Regime reg = GetParam();
    const BoundaryParams p = regime_params(reg);
    double prev = kInf;
    for (int L : {4, 6, 8}) {
        const double d = delta_e(ground_energy_ed(L, p, L), energy_reduced(solve_reduced_ground_state(reg, L, L, p)));
        EXPECT_GT(d, 0.0) << "L=" << L;
        EXPECT_LT(d, prev) << "L=" << L;
        prev = d;
    }
}

INSTANTIATE_TEST_SUITE_P(Regimes, ReducedGroundState, ::testing::ValuesIn(kRegimes),
                         [](const auto& info) { return "regime_" + to_string(info.param); });

TEST(Seeds, RegimeTwoHasOnePureImaginaryRoot) {
    const BoundaryParams p = regime_params(Regime::ii);
    const auto s = seed_roots(Regime::ii, 6, 6, p).to_shifted();
    int imaginary = 0;
    for (const auto& mu : s.v)
        if (std::abs(mu.real()) <= 1e-12) {
            ++imaginary;
            EXPECT_NEAR(mu.imag(), p.xi_prime - 0.5, 1e-3);
        }
    EXPECT_EQ(imaginary, 1);
}

TEST(Seeds, RegimeThreeBoundaryStringSolvesItsEquationExactly) {
    const BoundaryParams p = regime_params(Regime::iii);
    auto s = seed_roots(Regime::iii, 6, 6, p).to_shifted();
    s.l.back() = -kI * p.xi;
    s.v.back() = kI * (0.5 - p.xi);
    EXPECT_LE(std::abs(reduced_bae_residual(s, p).back()), 1e-10);
}

TEST(Seeds, RegimeOneStringsComeInConjugatePairs) {
    const auto s = seed_roots(Regime::i, 8, 8, regime_params(Regime::i)).to_shifted();
    for (std::size_t j = 0; j < s.l.size(); ++j) {
        EXPECT_GT(s.l[j].real(), 0.0);
        EXPECT_EQ(s.v[2 * j], std::conj(s.v[2 * j + 1]));
        EXPECT_EQ(s.v[2 * j].real(), s.l[j].real());
    }
}

TEST(Seeds, RegimeMismatchRejected) {
    EXPECT_THROW(seed_roots(Regime::ii, 6, 6, regime_params(Regime::i)), DomainError);
    EXPECT_THROW(seed_roots(Regime::i, 6, 5, regime_params(Regime::i)), DomainError);
}

TEST(LogBae, PhaseFunction) {
    EXPECT_NEAR(theta_m(2.0, 1.0), kPi / 2, 1e-15);
    EXPECT_NEAR(theta_m(3.0, -0.4), -theta_m(3.0, 0.4), 1e-15);
}

TEST(LogBae, QuantumNumberValidation) {
    const auto q = ground_state_quantum_numbers(8, 4);
    EXPECT_EQ(q.I, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_THROW(validate(QuantumNumbers{{0, 1}, 3}), DomainError);
    EXPECT_THROW(validate(QuantumNumbers{{2, 2}, 3}), DomainError);
    EXPECT_THROW(validate(QuantumNumbers{{4}, 3}), DomainError);
}

// Exact-string centers against the centers of the deformed strings the
// reduced equations produce at the same length.
TEST(LogBae, CentersMatchReducedSolutionAtLengthEight) {
    const BoundaryParams p = regime_params(Regime::i);
    const auto x = solve_log_bae_regime1(ground_state_quantum_numbers(8, 4), p, 8);
    const auto r = solve_reduced_ground_state(Regime::i, 8, 8, p).to_shifted();
    std::vector<double> centers;
    for (const auto& l : r.l) centers.push_back(l.real());
    std::sort(centers.begin(), centers.end());
    ASSERT_EQ(centers.size(), x.size());
    for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(centers[k], x[k], 1e-6) << "center " << k;
}

TEST(LogBae, CentersFollowContinuumDensityAtLengthSixtyFour) {
    const BoundaryParams p{1.9, kPi / 3, 0.0, 0.5, 0.0, 0.0};
    const int L = 64, M = 32;
    auto x = solve_log_bae_regime1(ground_state_quantum_numbers(L, M), p, L);
    std::sort(x.begin(), x.end());
    // rho at half filling, infinite length; its half-line mass is 1/4
    auto rho = [](double y) { return resolvent_transform(1.0, y); };
    double ks = 0.0, cdf = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        cdf += uniform_panels(prev, x[k], 0.25, 16).integrate(rho) / 0.25;
        prev = x[k];
        ks = std::max({ks, std::abs(cdf - double(k + 1) / M), std::abs(cdf - double(k) / M)});
    }
    EXPECT_LE(ks, 0.05);
}

TEST(RootIo, RoundTrip) {
    const auto r = solve_reduced_ground_state(Regime::iii, 4, 4, regime_params(Regime::iii));
    std::stringstream ss;
    write_roots(ss, r);
    const auto back = read_roots(ss);
    EXPECT_EQ(back.regime, r.regime);
    EXPECT_EQ(back.L, r.L);
    EXPECT_EQ(back.N, r.N);
    EXPECT_EQ(back.M, r.M);
    ASSERT_EQ(back.v.size(), r.v.size());
    ASSERT_EQ(back.l.size(), r.l.size());
    for (std::size_t k = 0; k < r.v.size(); ++k) EXPECT_EQ(back.v[k], r.v[k]);
    for (std::size_t k = 0; k < r.l.size(); ++k) EXPECT_EQ(back.l[k], r.l[k]);
}

TEST(RootIo, MalformedHeaderRejected) {
    std::stringstream ss("regime=i L=4\nv 1 2\n");
    EXPECT_THROW(read_roots(ss), IoError);
}
