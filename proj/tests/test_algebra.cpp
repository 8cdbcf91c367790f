#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tjlab/algebra/hamiltonian.hpp"
#include "tjlab/algebra/integrability.hpp"
#include "tjlab/algebra/operator_io.hpp"
#include "tjlab/algebra/spectrum.hpp"
#include "tjlab/algebra/transfer.hpp"

using namespace tjlab;

namespace {

const BoundaryParams kGeneric{0.7, 0.9, 0.4, -0.3, 1.2, 2.1};

double commutator_norm(const MatrixXc& a, const MatrixXc& b) { return (a * b - b * a).norm(); }

}  // namespace

TEST(RMatrix, AtZeroIsSignedPermutation) {
    const auto r = build_r_matrix(0.0).entries();
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            const cplx v = r(i, j);
            EXPECT_TRUE(v == cplx(0) || v == cplx(1) || v == cplx(-1)) << i << "," << j;
        }
    EXPECT_NEAR((r * r - MatrixXc::Identity(9, 9)).norm(), 0.0, 1e-15);
}

TEST(RMatrix, BosonicDiagonalIsUPlusOne) {
    const cplx u{0.37, -1.2};
    EXPECT_NEAR(std::abs(build_r_matrix(u).entries()(0, 0) - (u + 1.0)), 0.0, 1e-15);
}

TEST(RMatrix, FermionicDiagonalPermutationPartIsMinusOne) {
    const cplx u{0.37, -1.2};
    // index 3*1 + 1: both factors in the first fermionic state
    EXPECT_NEAR(std::abs(build_r_matrix(u).entries()(4, 4) - u - (-1.0)), 0.0, 1e-15);
}

TEST(KMatrix, MinusAtZeroIsXiIdentity) {
    EXPECT_NEAR((build_k_minus(0.0, kGeneric) - kGeneric.xi * Matrix3c::Identity()).norm(), 0.0, 1e-15);
}

TEST(KMatrix, MinusWithoutTiltIsDiagonal) {
    BoundaryParams p = kGeneric;
    p.theta = 0.0;
    const cplx u{0.3, 0.8};
    Matrix3c want = Matrix3c::Zero();
    want.diagonal() << p.xi + u, p.xi + u, p.xi - u;
    EXPECT_NEAR((build_k_minus(u, p) - want).norm(), 0.0, 1e-15);
}

TEST(KMatrix, PlusAtHalfHasScalarFermionBlock) {
    const auto k = build_k_plus(0.5, kGeneric);
    const Matrix3c::ConstFixedBlockXpr<2, 2>::Type block = k.block<2, 2>(1, 1);
    EXPECT_NEAR((block - (kGeneric.xi_prime - 0.5) * Eigen::Matrix2cd::Identity()).norm(), 0.0, 1e-15);
}

TEST(Integrability, ResidualsVanishForRandomParameters) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> xi(0.2, 2.0), ang(0.0, 2.0 * kPi);
    for (int k = 0; k < 20; ++k) {
        const BoundaryParams p{xi(rng), ang(rng), ang(rng), -xi(rng), ang(rng), ang(rng)};
        const auto rep = verify_integrability(p, 100, 100 + k);
        EXPECT_LE(rep.ybe, 1e-12);
        EXPECT_LE(rep.reflection, 1e-12);
        EXPECT_LE(rep.dual_reflection, 1e-12);
    }
}

TEST(Integrability, YangBaxterAtEqualArguments) {
    const cplx u{0.4, -0.9};
    EXPECT_LE(ybe_residual(u, u), 1e-14);
}

TEST(Integrability, CorruptedKMinusIsDetected) {
    const BoundaryParams p = kGeneric;
    const KMatrixFn bad = [&p](cplx u) {
        Matrix3c k = build_k_minus(u, p);
        k(1, 2) = -k(1, 2);
        return k;
    };
    EXPECT_GT(verify_integrability(p, 5, 3, bad).reflection, 1e-3);
}

TEST(Supertrace, IdentityGivesMinusOne) {
    EXPECT_EQ(supertrace(Matrix3c::Identity()), cplx(-1.0));
}

TEST(Transfer, FamilyCommutes) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-0.5, 0.5);
    for (int L : {2, 3, 4}) {
        FockBasis b(L);
        for (int k = 0; k < 10; ++k) {
            const auto t1 = transfer_matrix({c(rng), c(rng)}, kGeneric, b), t2 = transfer_matrix({c(rng), c(rng)}, kGeneric, b);
            EXPECT_LE(commutator_norm(t1, t2), 1e-10) << "L=" << L;
        }
    }
}

// Far from the origin the entries grow like |u|^(2L), so only the normalized residual is meaningful there.
TEST(Transfer, FamilyCommutesRelativeToNormOnWideBox) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    FockBasis b(4);
    for (int k = 0; k < 10; ++k) {
        const auto t1 = transfer_matrix({c(rng), c(rng)}, kGeneric, b), t2 = transfer_matrix({c(rng), c(rng)}, kGeneric, b);
        EXPECT_LE(commutator_norm(t1, t2) / (t1.norm() * t2.norm()), 1e-14);
    }
}

TEST(Transfer, CommutesWithDirectHamiltonian) {
    FockBasis b(3);
    const MatrixXc h = build_hamiltonian(3, map_boundary_params(kGeneric)).dense();
    EXPECT_LE(commutator_norm(transfer_matrix({0.61, -0.33}, kGeneric, b), h), 1e-10);
}

TEST(Transfer, EntriesArePolynomialInU) {
    const int L = 2, n = 4 * L + 3;
    FockBasis b(L);
    std::vector<cplx> nodes;
    std::vector<MatrixXc> values;
    for (int k = 0; k < n; ++k) {
        nodes.push_back(std::polar(1.5, 2.0 * kPi * k / n));
        values.push_back(transfer_matrix(nodes.back(), kGeneric, b));
    }
    const cplx at{0.41, 0.27};
    MatrixXc interp = MatrixXc::Zero(values[0].rows(), values[0].cols());
    for (int k = 0; k < n; ++k) {
        cplx w = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != k) w *= (at - nodes[static_cast<std::size_t>(j)]) / (nodes[static_cast<std::size_t>(k)] - nodes[static_cast<std::size_t>(j)]);
        interp += w * values[static_cast<std::size_t>(k)];
    }
    const MatrixXc direct = transfer_matrix(at, kGeneric, b);
    EXPECT_LE((interp - direct).norm() / direct.norm(), 1e-8);
}

TEST(Transfer, RefusesLargeChains) { EXPECT_THROW(build_transfer_matrix(0.1, 9, kGeneric), DomainError); }

TEST(Hamiltonian, TwoSitesOneParticleWithoutFields) {
    const auto h = build_hamiltonian(2, BoundaryFields{}, 1);
    EXPECT_NEAR(exact_spectrum(h, 1).front(), -1.0, 1e-12);
}

TEST(Hamiltonian, TwoSitesSingletWithoutFields) {
    const auto ev = exact_spectrum(build_hamiltonian(2, BoundaryFields{}, 2), 4);
    EXPECT_NEAR(ev[0], -2.0, 1e-12);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(ev[static_cast<std::size_t>(k)], 0.0, 1e-12);
}

TEST(Hamiltonian, ZAlignedFieldsConserveSz) {
    BoundaryParams p = kGeneric;
    p.theta = p.theta_prime = 0.0;
    const auto h = build_hamiltonian(3, map_boundary_params(p));
    const auto sz = total_sz(h.basis);
    EXPECT_LE(commutator_norm(h.dense(), sz.dense()), 1e-12);
}

TEST(Hamiltonian, UnparallelFieldsBreakSz) {
    const BoundaryParams p{0.413, kPi / 3, 0.0, -3.0, 0.0, 0.0};
    const auto h = build_hamiltonian(3, map_boundary_params(p));
    EXPECT_GT(commutator_norm(h.dense(), total_sz(h.basis).dense()), 1e-3);
}

TEST(Hamiltonian, ConservesParticleNumber) {
    const auto h = build_hamiltonian(3, map_boundary_params(kGeneric));
    EXPECT_EQ(commutator_norm(h.dense(), number_operator(h.basis).dense()), 0.0);
}

TEST(Hamiltonian, MatchesTransferMatrixDerivative) {
    for (int L : {2, 3}) {
        const MatrixXc hd = build_hamiltonian(L, map_boundary_params(kGeneric)).dense();
        const MatrixXc ht = hamiltonian_from_transfer(L, kGeneric);
        EXPECT_LE((hd - ht).norm() / hd.norm(), 1e-8) << "L=" << L;
        TransferHamiltonianOptions fd;
        fd.mode = DerivativeMode::central_difference;
        EXPECT_LE((hd - hamiltonian_from_transfer(L, kGeneric, std::nullopt, fd)).norm() / hd.norm(), 1e-6);
    }
}

TEST(Hamiltonian, BothConstructionsShareGroundEnergy) {
    const int L = 4;
    const double direct = exact_spectrum(build_hamiltonian(L, map_boundary_params(kGeneric)), 1).front();
    const double via_t = exact_spectrum(hamiltonian_from_transfer(L, kGeneric), 1).front();
    EXPECT_NEAR(direct, via_t, 1e-8);
}

TEST(Hamiltonian, DroppingChainConstantIsDetected) {
    TransferHamiltonianOptions opt;
    opt.include_chain_constant = false;
    const MatrixXc hd = build_hamiltonian(3, map_boundary_params(kGeneric)).dense();
    EXPECT_GT((hd - hamiltonian_from_transfer(3, kGeneric, std::nullopt, opt)).norm() / hd.norm(), 1e-3);
}

TEST(ParameterMap, LeftFieldAlongZ) {
    const auto f = map_boundary_params({0.5, 0.0, 0.0, -2.0, 0.0, 0.0});
    EXPECT_NEAR(f.chi_1, 0.0, 1e-15);
    EXPECT_NEAR(f.h_1[0], 0.0, 1e-15);
    EXPECT_NEAR(f.h_1[1], 0.0, 1e-15);
    EXPECT_NEAR(f.h_1[2], 1.0, 1e-15);
}

TEST(ParameterMap, RightFieldAlongMinusZ) {
    const auto f = map_boundary_params({1.0, 0.0, 0.0, 0.5, 0.0, 0.0});
    EXPECT_NEAR(f.chi_L, 0.0, 1e-15);
    EXPECT_NEAR(f.h_L[2], -1.0, 1e-15);
}

TEST(ParameterMap, FieldNormsAndPoles) {
    const auto f = map_boundary_params(kGeneric);
    auto norm = [](const std::array<double, 3>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
    EXPECT_NEAR(norm(f.h_1), 1.0 / (2.0 * std::abs(kGeneric.xi)), 1e-14);
    EXPECT_NEAR(norm(f.h_L), 1.0 / (2.0 * std::abs(1.0 - kGeneric.xi_prime)), 1e-14);
    EXPECT_THROW(map_boundary_params({0.0, 0, 0, 0.5, 0, 0}), DomainError);
    EXPECT_THROW(map_boundary_params({0.5, 0, 0, 1.0, 0, 0}), DomainError);
}

TEST(ParameterMap, AlignedAnglesGiveZeroInhomogeneity) {
    const BoundaryParams p{0.7, 1.1, 0.3, -0.4, 1.1, 0.3};
    EXPECT_NEAR(p.h(), 0.0, 1e-15);
    EXPECT_GE(kGeneric.h(), 0.0);
    EXPECT_LE(kGeneric.h(), 2.0);
}

TEST(Spectrum, DiagonalMatrix) {
    MatrixXc m = MatrixXc::Zero(3, 3);
    m.diagonal() << 3.0, 1.0, 2.0;
    const auto ev = exact_spectrum(m, 2);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(ev[0], 1.0, 1e-15);
    EXPECT_NEAR(ev[1], 2.0, 1e-15);
}

TEST(Spectrum, RejectsNonHermitian) {
    MatrixXc m = MatrixXc::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(exact_spectrum(m, 1), DomainError);
}

TEST(Spectrum, ZeroFieldSpinSectorsAreDegenerate) {
    const auto h = build_hamiltonian(3, BoundaryFields{}, 1);
    const SparseXc up = restrict_to_sz(h, 0.5), down = restrict_to_sz(h, -0.5);
    const auto a = exact_spectrum(MatrixXc(up), 3), b = exact_spectrum(MatrixXc(down), 3);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
}

TEST(Spectrum, GroundEnergyFallsWithLeftFieldStrength) {
    double prev = kInf;
    for (double strength : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        BoundaryFields f;
        f.h_1 = {0.6 * strength, 0.0, 0.8 * strength};
        const double e = exact_spectrum(build_hamiltonian(4, f), 1).front();
        EXPECT_LE(e, prev + 1e-12) << strength;
        prev = e;
    }
}

TEST(Spectrum, LanczosAgreesWithDense) {
    const auto h = restrict_to_sector(build_hamiltonian(7, map_boundary_params(kGeneric)), 6);
    const auto d = exact_spectrum(h.dense(), 2);
    const auto l = lanczos_lowest(h.matrix, 2);
    EXPECT_NEAR(d[0], l[0], 1e-9);
    EXPECT_NEAR(d[1], l[1], 1e-9);
}

TEST(OperatorIo, TripletRoundTrip) {
    const auto h = build_hamiltonian(2, map_boundary_params(kGeneric));
    const MatrixXc m = h.dense();
    std::stringstream ss;
    write_triplets(ss, m, GradedOperator::identity(2).parities());
    const auto back = read_triplets(ss);
    EXPECT_EQ(back.parity, GradedOperator::identity(2).parities());
    EXPECT_LE((back.dense() - m).norm(), 1e-14);
}
