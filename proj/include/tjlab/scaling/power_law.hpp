#pragma once

// delta_e = gamma L^beta by ordinary least squares on (ln L, ln delta_e).

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tjlab/common.hpp"

namespace tjlab {

struct ScalingPoint {
    double L;
    double delta_e;
};

struct PowerLawFit {
    double gamma = 0.0;
    double beta = 0.0;
    double r_squared = 0.0;
    double beta_stderr = 0.0;  // zero for two-parameter-exact data
};

inline void validate(const std::vector<ScalingPoint>& pts) {
    if (pts.size() < 3) throw DomainError("a power-law fit needs at least 3 points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(pts[i].delta_e > 0.0) || !std::isfinite(pts[i].delta_e))
            throw DomainError("delta_e must be positive and finite");
        if (!(pts[i].L > 0.0)) throw DomainError("L must be positive");
        if (i && !(pts[i].L > pts[i - 1].L)) throw DomainError("L must be strictly increasing");
    }
}

inline PowerLawFit fit_power_law(const std::vector<ScalingPoint>& pts) {
    validate(pts);
    const double n = static_cast<double>(pts.size());
    double mx = 0, my = 0;
    for (const auto& p : pts) {
        mx += std::log(p.L);
        my += std::log(p.delta_e);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : pts) {
        const double dx = std::log(p.L) - mx, dy = std::log(p.delta_e) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    PowerLawFit f;
    f.beta = sxy / sxx;
    f.gamma = std::exp(my - f.beta * mx);
    double sse = 0;
    for (const auto& p : pts) {
        const double e = std::log(p.delta_e) - (my + f.beta * (std::log(p.L) - mx));
        sse += e * e;
    }
    // A constant series has syy = 0 and is fitted exactly.
    f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    f.beta_stderr = pts.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
    return f;
}

/// `L,delta_e` rows; a header line and '#' comments are skipped.
inline std::vector<ScalingPoint> read_scaling_csv(std::istream& is) {
    std::vector<ScalingPoint> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        ScalingPoint p{};
        if (!(ls >> p.L >> p.delta_e)) {
            if (out.empty() && line.find_first_of("0123456789") == std::string::npos) continue;
            throw IoError("malformed scaling row: " + line);
        }
        out.push_back(p);
    }
    return out;
}

inline void write_fit_csv(std::ostream& os, const PowerLawFit& f) {
    os.precision(12);
    os << "gamma,beta,r_squared\n" << f.gamma << ',' << f.beta << ',' << f.r_squared << '\n';
}

}  // namespace tjlab
