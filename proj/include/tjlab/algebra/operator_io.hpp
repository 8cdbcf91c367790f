#pragma once

// Triplet-list text format for operators:
//
//   # dim=<d> parity=<p_0 p_1 ... p_{d-1} as one digit string>
//   <row> <col> <re> <im>
//
// Only nonzero entries are written; values use 17 significant digits so the
// round trip is exact.

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "tjlab/common.hpp"

namespace tjlab {

struct TripletOperator {
    Eigen::Index dim = 0;
    std::vector<int> parity;
    std::vector<Eigen::Triplet<cplx>> entries;

    MatrixXc dense() const {
        MatrixXc m = MatrixXc::Zero(dim, dim);
        for (const auto& t : entries) m(t.row(), t.col()) += t.value();
        return m;
    }
};

inline void write_triplets(std::ostream& os, const MatrixXc& m, const std::vector<int>& parity,
                           double drop_below = 0.0) {
    if (static_cast<Eigen::Index>(parity.size()) != m.rows()) throw DomainError("parity vector size mismatch");
    os << "# dim=" << m.rows() << " parity=";
    for (int p : parity) os << p;
    os << '\n' << std::setprecision(17);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const cplx v = m(r, c);
            if (std::abs(v) <= drop_below) continue;
            os << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
        }
}

inline TripletOperator read_triplets(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# dim=", 0) != 0)
        throw IoError("triplet file must start with '# dim=<d> parity=<bits>'");
    TripletOperator out;
    std::istringstream hs(header.substr(2));
    std::string tok;
    while (hs >> tok) {
        if (tok.rfind("dim=", 0) == 0) {
            out.dim = std::stoll(tok.substr(4));
        } else if (tok.rfind("parity=", 0) == 0) {
            for (char ch : tok.substr(7)) {
                if (ch != '0' && ch != '1') throw IoError("parity string must contain only 0/1");
                out.parity.push_back(ch - '0');
            }
        }
    }
    if (out.dim <= 0 || static_cast<Eigen::Index>(out.parity.size()) != out.dim)
        throw IoError("triplet header dim and parity length disagree");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Eigen::Index r, c;
        double re, im;
        if (!(ls >> r >> c >> re >> im)) throw IoError("malformed triplet line: " + line);
        if (r < 0 || c < 0 || r >= out.dim || c >= out.dim) throw IoError("triplet index out of range: " + line);
        out.entries.emplace_back(r, c, cplx(re, im));
    }
    return out;
}

}  // namespace tjlab
