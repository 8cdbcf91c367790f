// Checks a tjlab CSV: row count, sign and monotonicity of one column, per curve.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

int fail(const std::string& why) {
    std::cerr << "FAIL: " << why << '\n';
    return 1;
}

}  // namespace

// usage: curve_check FILE --y COL [--group COL] [--rows N] [--decreasing|--increasing] [--negative] [--convex]
int main(int argc, char** argv) {
    if (argc < 2) return fail("no file");
    std::string y_name, group_name, order;
    long rows_wanted = -1;
    bool negative = false, convex = false;
    for (int k = 2; k < argc; ++k) {
        const std::string a = argv[k];
        if (a == "--y" && k + 1 < argc) y_name = argv[++k];
        else if (a == "--group" && k + 1 < argc) group_name = argv[++k];
        else if (a == "--rows" && k + 1 < argc) rows_wanted = std::atol(argv[++k]);
        else if (a == "--decreasing" || a == "--increasing") order = a;
        else if (a == "--negative") negative = true;
        else if (a == "--convex") convex = true;
        else return fail("unknown argument " + a);
    }
    std::ifstream in(argv[1]);
    if (!in) return fail(std::string("cannot open ") + argv[1]);

    std::vector<std::string> header;
    std::map<double, std::vector<double>> curves;  // rows keep file order within a group
    long rows = 0;
    int y_col = -1, g_col = -1;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        if (header.empty()) {
            header = cells;
            for (int i = 0; i < int(cells.size()); ++i) {
                if (cells[i] == y_name) y_col = i;
                if (cells[i] == group_name) g_col = i;
            }
            if (y_col < 0) return fail("no column " + y_name);
            if (!group_name.empty() && g_col < 0) return fail("no column " + group_name);
            continue;
        }
        if (cells.size() != header.size()) return fail("ragged row: " + line);
        ++rows;
        curves[g_col < 0 ? 0.0 : std::stod(cells[g_col])].push_back(std::stod(cells[y_col]));
    }
    if (rows_wanted >= 0 && rows != rows_wanted)
        return fail("expected " + std::to_string(rows_wanted) + " rows, found " + std::to_string(rows));
    for (const auto& [g, ys] : curves) {
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (!std::isfinite(ys[i])) return fail("non-finite value");
            if (negative && !(ys[i] < 0)) return fail("non-negative value in curve " + std::to_string(g));
            if (i == 0) continue;
            if (order == "--decreasing" && !(ys[i] < ys[i - 1])) return fail("not decreasing in curve " + std::to_string(g));
            if (order == "--increasing" && !(ys[i] > ys[i - 1])) return fail("not increasing in curve " + std::to_string(g));
            if (convex && i + 1 < ys.size() && ys[i + 1] - 2 * ys[i] + ys[i - 1] < -1e-9)
                return fail("not convex in curve " + std::to_string(g));
        }
    }
    std::cout << "ok: " << rows << " rows in " << curves.size() << " curve(s)\n";
    return 0;
}
