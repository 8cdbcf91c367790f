#pragma once

// Cross-check of solved inhomogeneous BAE roots against the transfer matrix
// and exact diagonalisation at small L.

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tjlab/algebra/spectrum.hpp"
#include "tjlab/algebra/transfer.hpp"
#include "tjlab/bethe/inhomogeneous.hpp"

namespace tjlab {

struct TqCertificate {
    int solutions = 0;         // distinct admissible BAE solutions found
    int certified = 0;         // of those, how many reproduce a t(u) eigenvalue
    double lambda_mismatch = kInf;  // worst relative |Lambda - eigenvalue| of the lowest certified state
    double e_bae = kInf;
    double e_ed = kInf;
    RootConfiguration roots;
};

/// Relative distance from Lambda(u) to the nearest eigenvalue of t(u), worst over the points.
inline double eigenvalue_mismatch(const RootConfiguration& r, const BoundaryParams& p, const std::vector<cplx>& points,
                                  const std::vector<Eigen::VectorXcd>& spectra) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const cplx lam = eval_inhom_tq(points[i], r, p);
        double best = kInf;
        for (Eigen::Index j = 0; j < spectra[i].size(); ++j)
            best = std::min(best, std::abs(spectra[i](j) - lam) / std::max(1.0, std::abs(lam)));
        worst = std::max(worst, best);
    }
    return worst;
}

/// Multistart the inhomogeneous BAEs in the N-particle sector, keep the
/// solutions whose Lambda(u) is a t(u) eigenvalue at `checks` random points,
/// and compare the lowest of them with the ED ground energy of the sector.
inline TqCertificate certify_tq(const BoundaryParams& p, int L, int N, int starts, std::uint64_t seed = 2024,
                                int checks = 5, double match_tol = 1e-8) {
    FockBasis basis(L, N);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    std::vector<cplx> points;
    std::vector<Eigen::VectorXcd> spectra;
    for (int k = 0; k < checks; ++k) {
        points.emplace_back(coord(rng), coord(rng));
        spectra.push_back(Eigen::ComplexEigenSolver<MatrixXc>(transfer_matrix(points.back(), p, basis), false)
                              .eigenvalues());
    }
    TqCertificate out;
    const auto sols = multistart_inhom_bae(p, L, N, starts, seed);
    out.solutions = static_cast<int>(sols.size());
    for (const auto& s : sols) {
        const double mis = eigenvalue_mismatch(s, p, points, spectra);
        if (mis > match_tol) continue;
        ++out.certified;
        const double e = energy_inhom(s, 1e-7);
        if (e < out.e_bae) {
            out.e_bae = e;
            out.lambda_mismatch = mis;
            out.roots = s;
        }
    }
    out.e_ed = ground_energy_ed(L, p, N);
    return out;
}

}  // namespace tjlab
