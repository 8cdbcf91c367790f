#pragma once

#include <istream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tjlab/algebra/boundary.hpp"
#include "tjlab/common.hpp"

namespace tjlab {

/// raw: (v~, lambda~) as they enter Q and Q1.
/// shifted: mu = -i(v~ + 1/2), lambda = -i lambda~.
enum class Representation { raw, shifted };

struct SolveInfo {
    bool converged = false;
    int iterations = 0;
    int jitters = 0;
    double residual = kInf;
};

struct RootConfiguration {
    std::vector<cplx> v;  // v~ or mu
    std::vector<cplx> l;  // lambda~ or lambda
    Regime regime = Regime::none;
    int L = 0;
    int N = 0;
    int M = 0;
    Representation representation = Representation::raw;
    SolveInfo info;

    RootConfiguration to_shifted() const {
        if (representation == Representation::shifted) return *this;
        RootConfiguration out = *this;
        for (auto& x : out.v) x = -kI * (x + 0.5);
        for (auto& x : out.l) x = -kI * x;
        out.representation = Representation::shifted;
        return out;
    }

    RootConfiguration to_raw() const {
        if (representation == Representation::raw) return *this;
        RootConfiguration out = *this;
        for (auto& x : out.v) x = kI * x - 0.5;
        for (auto& x : out.l) x = kI * x;
        out.representation = Representation::raw;
        return out;
    }
};

/// A string pair mu = x +- i/2 within the deviation bound 1e-6 L.
struct StringPair {
    std::size_t upper;
    std::size_t lower;
    double center;
    double deviation;
};

inline std::vector<StringPair> find_two_strings(const RootConfiguration& r) {
    const auto s = r.to_shifted();
    const double bound = 1e-6 * std::max(1, r.L);
    std::vector<StringPair> out;
    std::vector<bool> used(s.v.size(), false);
    for (std::size_t a = 0; a < s.v.size(); ++a) {
        if (used[a] || s.v[a].imag() <= 0.0) continue;
        for (std::size_t b = 0; b < s.v.size(); ++b) {
            if (b == a || used[b]) continue;
            const cplx up = s.v[a], dn = s.v[b];
            const double dev = std::max(std::abs(up - cplx(up.real(), 0.5)), std::abs(dn - cplx(up.real(), -0.5)));
            if (dev <= bound) {
                used[a] = used[b] = true;
                out.push_back({a, b, 0.5 * (up.real() + dn.real()), dev});
                break;
            }
        }
    }
    return out;
}

inline void write_roots(std::ostream& os, const RootConfiguration& r) {
    os << "# regime=" << to_string(r.regime) << " L=" << r.L << " N=" << r.N << " M=" << r.M
       << " representation=" << (r.representation == Representation::raw ? "raw" : "shifted") << '\n'
       << std::setprecision(17);
    for (const auto& x : r.v) os << "v " << x.real() << ' ' << x.imag() << '\n';
    for (const auto& x : r.l) os << "l " << x.real() << ' ' << x.imag() << '\n';
}

inline RootConfiguration read_roots(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# regime=", 0) != 0)
        throw IoError("root file must start with '# regime=<r> L=<L> N=<N> M=<M>'");
    RootConfiguration r;
    std::istringstream hs(header.substr(2));
    std::string tok;
    bool have_l = false, have_n = false, have_m = false;
    try {
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "regime") r.regime = parse_regime(val);
            else if (key == "L") { r.L = std::stoi(val); have_l = true; }
            else if (key == "N") { r.N = std::stoi(val); have_n = true; }
            else if (key == "M") { r.M = std::stoi(val); have_m = true; }
            else if (key == "representation") {
                if (val == "raw") r.representation = Representation::raw;
                else if (val == "shifted") r.representation = Representation::shifted;
                else throw IoError("unknown representation: " + val);
            }
        }
    } catch (const std::logic_error& e) {
        throw IoError(std::string("bad root file header: ") + e.what());
    }
    if (!have_l || !have_n || !have_m) throw IoError("root file header needs L, N and M");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        double re, im;
        if (!(ls >> tag >> re >> im) || (tag != "v" && tag != "l")) throw IoError("malformed root line: " + line);
        (tag == "v" ? r.v : r.l).emplace_back(re, im);
    }
    if (static_cast<int>(r.v.size()) != r.N) throw IoError("number of v lines differs from N");
    if (static_cast<int>(r.l.size()) != r.M) throw IoError("number of l lines differs from M");
    return r;
}

}  // namespace tjlab
