#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNoConvergence = 2, kIo = 3, kVerifyFailed = 4 };

struct Settings {
    std::string command;
    std::string regime;
    BoundaryParams p{1.9, kPi / 3, 0.0, 0.5, 0.0, 0.0};
    int L = 4;
    std::optional<int> N;
    std::optional<double> sz;
    double n = 1.0;
    std::string length = "inf";  // continuum length, a number or "inf"
    std::vector<int> L_values;
    int trials = 50;
    int starts = 6000;
    std::string curve;
    double from = NAN, to = NAN;
    int points = 20;
    std::vector<double> values;
    double x_max = 10.0;
    std::string input, output;
    std::string format;
    int jobs = 1;
    std::uint64_t seed = 2024;
};

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// JSON numbers carry 12 significant digits like the CSV output; infinities become null.
json jnum(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(num(x));
}

double parse_length(const std::string& s) {
    if (s == "inf" || s == "infinity") return kInf;
    try {
        std::size_t used = 0;
        const double L = std::stod(s, &used);
        if (used == s.size() && L > 0.0) return L;
    } catch (const std::exception&) {
    }
    throw DomainError("length must be a positive number or 'inf', got '" + s + "'");
}

Regime resolve_regime(const Settings& s) {
    const Regime found = classify(s.p);
    if (s.regime.empty()) return found;
    const Regime asked = parse_regime(s.regime);
    if (!consistent(asked, s.p))
        throw DomainError("regime " + s.regime + " is inconsistent with xi=" + num(s.p.xi) + ", xi'=" + num(s.p.xi_prime));
    return asked;
}

std::vector<std::pair<std::string, std::string>> echo(const Settings& s) {
    std::vector<std::pair<std::string, std::string>> kv{{"command", s.command},
                                                        {"regime", s.regime.empty() ? to_string(classify(s.p)) : s.regime},
                                                        {"xi", num(s.p.xi)},
                                                        {"theta", num(s.p.theta)},
                                                        {"phi", num(s.p.phi)},
                                                        {"xi-prime", num(s.p.xi_prime)},
                                                        {"theta-prime", num(s.p.theta_prime)},
                                                        {"phi-prime", num(s.p.phi_prime)},
                                                        {"seed", std::to_string(s.seed)}};
    auto add = [&kv](const char* k, std::string v) { kv.emplace_back(k, std::move(v)); };
    const std::string& c = s.command;
    if (c == "verify" || c == "ed" || c == "bae") add("L", std::to_string(s.L));
    if ((c == "ed" || c == "bae") && s.N) add("N", std::to_string(*s.N));
    if (c == "ed" && s.sz) add("sz", num(*s.sz));
    if (c == "verify") add("trials", std::to_string(s.trials));
    if (c == "density" || c == "ground-energy" || (c == "sweep" && s.curve == "E-vs-n")) add("length", s.length);
    if (c == "density" || c == "ground-energy") add("n", num(s.n));
    if (c == "density") {
        add("x-max", num(s.x_max));
        add("points", std::to_string(s.points));
    }
    if (c == "delta-e" || (c == "sweep" && s.curve == "delta-e-vs-L")) {
        std::string ls;
        for (int L : s.L_values) ls += (ls.empty() ? "" : ",") + std::to_string(L);
        add("L-values", ls);
        const char* env = std::getenv("DELTA_E_SOLVER");
        add("delta-e-solver", env ? env : "ed");
    }
    if (c == "sweep") {
        add("curve", s.curve);
        add("from", num(s.from));
        add("to", num(s.to));
        add("points", std::to_string(s.points));
        std::string vs;
        for (double v : s.values) vs += (vs.empty() ? "" : ",") + num(v);
        if (!vs.empty()) add("values", vs);
    }
    if (c == "fit") add("input", s.input);
    return kv;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> trailer;  // extra comment lines after the data
};

void write_csv(std::ostream& os, const Settings& s, const Table& t) {
    os << "# tjlab " << kVersion << '\n';
    for (const auto& [k, v] : echo(s)) os << "# " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
        os << '\n';
    }
    for (const auto& line : t.trailer) os << "# " << line << '\n';
}

json table_json(const Table& t) {
    json cols = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        json col = json::array();
        for (const auto& r : t.rows) col.push_back(jnum(r[i]));
        cols[t.columns[i]] = col;
    }
    return cols;
}

// Files always carry the version and config echo; a bare JSON result goes to stdout.
void emit(const Settings& s, const json& result, const std::optional<Table>& table) {
    static const std::set<std::string> tabular{"delta-e", "fit", "density", "sweep"};
    const std::string fmt = !s.format.empty() ? s.format : tabular.count(s.command) ? "csv" : "json";
    std::ostringstream out;
    if (fmt == "csv") {
        if (!table) throw DomainError("command '" + s.command + "' has no CSV form; use --format json");
        write_csv(out, s, *table);
    } else if (s.output.empty()) {
        out << result.dump(2) << '\n';
    } else {
        json doc;
        doc["version"] = kVersion;
        json cfg = json::object();
        for (const auto& [k, v] : echo(s)) cfg[k] = v;
        doc["config"] = cfg;
        doc["result"] = result;
        out << doc.dump(2) << '\n';
    }
    if (s.output.empty()) {
        std::cout << out.str();
        return;
    }
    std::ofstream f(s.output);
    if (!f) throw IoError("cannot open output file " + s.output);
    f << out.str();
    if (!f) throw IoError("failed writing " + s.output);
}

// Runs f(0..count-1) on at most `jobs` threads; each task writes only its own slot.
template <class T>
std::vector<T> parallel_map(int count, int jobs, const std::function<T(int)>& f) {
    std::vector<T> out(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k; (k = next++) < count;) {
            try {
                out[static_cast<std::size_t>(k)] = f(k);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < std::min(jobs, count); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw DomainError("--points must be at least 1");
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("--from and --to are required for this curve");
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = n == 1 ? a : a + (b - a) * k / (n - 1);
    return x;
}

// ---------------------------------------------------------------------------

int run_verify(const Settings& s) {
    if (s.L < 2 || s.L > 5) throw DomainError("verify supports 2 <= L <= 5");
    if (s.trials < 1) throw DomainError("--trials must be positive");
    const auto rep = verify_integrability(s.p, s.trials, s.seed);
    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<double> c(-0.5, 0.5);
    FockBasis b(s.L);
    double comm = 0.0;
    for (int k = 0; k < s.trials; ++k) {
        const MatrixXc t1 = transfer_matrix({c(rng), c(rng)}, s.p, b), t2 = transfer_matrix({c(rng), c(rng)}, s.p, b);
        comm = std::max(comm, (t1 * t2 - t2 * t1).norm());
    }
    const MatrixXc hd = build_hamiltonian(s.L, map_boundary_params(s.p)).dense();
    const double ham = (hd - hamiltonian_from_transfer(s.L, s.p)).norm() / hd.norm();
    const double worst = std::max({rep.max(), comm});
    const bool ok = worst <= 1e-10 && ham <= 1e-6;
    json r;
    r["yang_baxter"] = jnum(rep.ybe);
    r["reflection"] = jnum(rep.reflection);
    r["dual_reflection"] = jnum(rep.dual_reflection);
    r["commutator"] = jnum(comm);
    r["hamiltonian_relative"] = jnum(ham);
    r["max_residual"] = jnum(worst);
    r["pass"] = ok;
    Table t{{"yang_baxter", "reflection", "dual_reflection", "commutator", "hamiltonian_relative"},
            {{rep.ybe, rep.reflection, rep.dual_reflection, comm, ham}},
            {}};
    emit(s, r, t);
    return ok ? kOk : kVerifyFailed;
}

int run_ed(const Settings& s) {
    const int N = s.N.value_or(s.L);
    const double e = ground_energy_ed(s.L, s.p, N, s.sz);
    emit(s, jnum(e), Table{{"L", "N", "energy"}, {{double(s.L), double(N), e}}, {}});
    return kOk;
}

json roots_json(const std::vector<cplx>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(json::array({jnum(x.real()), jnum(x.imag())}));
    return a;
}

int run_bae(const Settings& s) {
    const Regime r = resolve_regime(s);
    const int N = s.N.value_or(s.L);
    const auto roots = solve_reduced_ground_state(r, s.L, N, s.p).to_shifted();
    const double e = energy_reduced(roots);
    json j;
    j["regime"] = to_string(r);
    j["L"] = s.L;
    j["N"] = N;
    j["M"] = roots.M;
    j["energy"] = jnum(e);
    j["mu"] = roots_json(roots.v);
    j["lambda"] = roots_json(roots.l);
    Table t{{"kind", "re", "im"}, {}, {"kind 0 = mu, 1 = lambda; energy = " + num(e)}};
    for (const auto& x : roots.v) t.rows.push_back({0, x.real(), x.imag()});
    for (const auto& x : roots.l) t.rows.push_back({1, x.real(), x.imag()});
    emit(s, j, t);
    return kOk;
}

// delta_e = |E - E_hom| at n = 1; E from ED, or from certified inhomogeneous roots.
Table delta_e_table(const Settings& s) {
    const Regime r = resolve_regime(s);
    const char* env = std::getenv("DELTA_E_SOLVER");
    const std::string solver = env ? env : "ed";
    if (solver != "ed" && solver != "bae") throw DomainError("DELTA_E_SOLVER must be 'ed' or 'bae'");
    if (s.L_values.size() < 1) throw DomainError("--L-values needs at least one length");
    const auto vals = parallel_map<double>(static_cast<int>(s.L_values.size()), s.jobs, [&](int k) {
        const int L = s.L_values[static_cast<std::size_t>(k)];
        double e;
        if (solver == "ed") {
            e = ground_energy_ed(L, s.p, L);
        } else {
            const auto c = certify_tq(s.p, L, L, s.starts, s.seed);
            if (c.certified == 0) throw ConvergenceError("no inhomogeneous BAE solution matched t(u) at L=" + std::to_string(L), kInf);
            e = c.e_bae;
        }
        return delta_e(e, energy_reduced(solve_reduced_ground_state(r, L, L, s.p)));
    });
    Table t{{"L", "delta_e"}, {}, {}};
    std::vector<ScalingPoint> pts;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        t.rows.push_back({double(s.L_values[k]), vals[k]});
        pts.push_back({double(s.L_values[k]), vals[k]});
    }
    if (pts.size() >= 3) {
        const auto f = fit_power_law(pts);
        t.trailer.push_back("fit gamma = " + num(f.gamma) + ", beta = " + num(f.beta) + ", r_squared = " + num(f.r_squared));
    }
    return t;
}

int run_delta_e(const Settings& s) {
    const auto t = delta_e_table(s);
    emit(s, table_json(t), t);
    return kOk;
}

int run_fit(const Settings& s) {
    if (s.input.empty()) throw DomainError("--input is required");
    std::ifstream in(s.input);
    if (!in) throw IoError("cannot open " + s.input);
    const auto f = fit_power_law(read_scaling_csv(in));
    json j;
    j["gamma"] = jnum(f.gamma);
    j["beta"] = jnum(f.beta);
    j["r_squared"] = jnum(f.r_squared);
    emit(s, j, Table{{"gamma", "beta", "r_squared"}, {{f.gamma, f.beta, f.r_squared}}, {}});
    return kOk;
}

int run_density(const Settings& s) {
    const Regime r = resolve_regime(s);
    const double L = parse_length(s.length);
    const double q0 = find_q0(r, s.p, s.n, L);
    const auto sol = solve_interior(regime_source(r, s.p, L), q0);
    Table t{{"x", "rho"}, {}, {"Q0 = " + num(q0) + ", filling integral = " + num(sol.filling())}};
    for (double x : linspace(q0, std::max(q0, s.x_max), s.points)) t.rows.push_back({x, sol(x)});
    json j;
    j["Q0"] = jnum(q0);
    j["filling"] = jnum(sol.filling());
    j["density"] = table_json(t);
    emit(s, j, t);
    return kOk;
}

json report_json(const EnergyReport& e) {
    json j;
    j["regime"] = to_string(e.regime);
    j["n"] = jnum(e.n);
    j["L"] = jnum(e.L);
    j["per_site"] = e.per_site;
    j["Q0"] = jnum(e.Q0);
    j["total"] = jnum(e.total);
    j["bulk"] = jnum(e.bulk);
    j["surface"] = jnum(e.surface);
    j["boundary_string"] = jnum(e.boundary_string);
    j["hole"] = jnum(e.hole);
    return j;
}

int run_ground_energy(const Settings& s) {
    const Regime r = resolve_regime(s);
    const auto e = ground_energy(r, s.p, s.n, parse_length(s.length));
    emit(s, report_json(e),
         Table{{"n", "L", "Q0", "total", "bulk", "surface", "boundary_string", "hole"},
               {{e.n, e.L, e.Q0, e.total, e.bulk, e.surface, e.boundary_string, e.hole}},
               {}});
    return kOk;
}

int run_surface_energy(const Settings& s) {
    const double eb = surface_energy(resolve_regime(s), s.p);
    emit(s, jnum(eb), Table{{"xi", "xi_prime", "E_b"}, {{s.p.xi, s.p.xi_prime, eb}}, {}});
    return kOk;
}

int run_sweep(const Settings& s) {
    const Regime r = resolve_regime(s);
    Table t;
    if (s.curve == "E-vs-n") {
        const double L = parse_length(s.length);
        const auto ns = linspace(s.from, s.to, s.points);
        const auto es = parallel_map<double>(s.points, s.jobs, [&](int k) {
            const auto e = ground_energy(r, s.p, ns[static_cast<std::size_t>(k)], L);
            return e.per_site ? e.total : e.total / L;
        });
        t.columns = {"n", "E_over_L"};
        for (int k = 0; k < s.points; ++k) t.rows.push_back({ns[static_cast<std::size_t>(k)], es[static_cast<std::size_t>(k)]});
    } else if (s.curve == "Eb-vs-xi" || s.curve == "Eb-vs-xi-prime") {
        const bool vary_xi = s.curve == "Eb-vs-xi";
        const auto xs = linspace(s.from, s.to, s.points);
        const std::vector<double> fixed = s.values.empty() ? std::vector<double>{vary_xi ? s.p.xi_prime : s.p.xi} : s.values;
        std::vector<BoundaryParams> grid;
        for (double f : fixed)
            for (double x : xs) {
                BoundaryParams q = s.p;
                (vary_xi ? q.xi : q.xi_prime) = x;
                (vary_xi ? q.xi_prime : q.xi) = f;
                if (!consistent(r, q))
                    throw DomainError("point xi=" + num(q.xi) + ", xi'=" + num(q.xi_prime) + " leaves regime " + to_string(r));
                grid.push_back(q);
            }
        const auto eb = parallel_map<double>(static_cast<int>(grid.size()), s.jobs,
                                             [&](int k) { return surface_energy(r, grid[static_cast<std::size_t>(k)]); });
        t.columns = {"xi", "xi_prime", "E_b"};
        for (std::size_t k = 0; k < grid.size(); ++k) t.rows.push_back({grid[k].xi, grid[k].xi_prime, eb[k]});
    } else if (s.curve == "delta-e-vs-L") {
        t = delta_e_table(s);
    } else {
        throw DomainError("unknown curve '" + s.curve + "' (E-vs-n, Eb-vs-xi, Eb-vs-xi-prime, delta-e-vs-L)");
    }
    emit(s, table_json(t), t);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open supersymmetric t-J chain: integrability checks, Bethe roots, continuum energies"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
    app.require_subcommand(1, 1);
    app.fallthrough();

    Settings s;
    app.add_option("--regime", s.regime, "i, ii, iii or iv; defaults to the one implied by xi, xi'");
    app.add_option("--xi", s.p.xi, "left boundary parameter")->capture_default_str();
    app.add_option("--theta", s.p.theta, "left field polar angle")->capture_default_str();
    app.add_option("--phi", s.p.phi, "left field azimuth")->capture_default_str();
    app.add_option("--xi-prime", s.p.xi_prime, "right boundary parameter")->capture_default_str();
    app.add_option("--theta-prime", s.p.theta_prime, "right field polar angle")->capture_default_str();
    app.add_option("--phi-prime", s.p.phi_prime, "right field azimuth")->capture_default_str();
    app.add_option("--L", s.L, "chain length")->capture_default_str();
    app.add_option("--N", s.N, "particle number (default L)");
    app.add_option("--sz", s.sz, "restrict ED to this total S^z");
    app.add_option("--n", s.n, "filling N/L")->capture_default_str();
    app.add_option("--length", s.length, "continuum length: a number or inf")->capture_default_str();
    app.add_option("--L-values", s.L_values, "comma-separated chain lengths for delta_e")->delimiter(',');
    app.add_option("--trials", s.trials, "random spectral points for verify")->capture_default_str();
    app.add_option("--starts", s.starts, "multistart count for inhomogeneous BAE")->capture_default_str();
    app.add_option("--curve", s.curve, "E-vs-n, Eb-vs-xi, Eb-vs-xi-prime or delta-e-vs-L");
    app.add_option("--from", s.from, "start of the swept range");
    app.add_option("--to", s.to, "end of the swept range");
    app.add_option("--points", s.points, "number of sweep or density points")->capture_default_str();
    app.add_option("--values", s.values, "comma-separated values of the fixed parameter in surface sweeps")->delimiter(',');
    app.add_option("--x-max", s.x_max, "upper end of the density grid")->capture_default_str();
    app.add_option("--input", s.input, "input CSV for fit");
    app.add_option("--output,-o", s.output, "output file (default stdout)");
    app.add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs,-j", s.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--seed", s.seed, "random seed")->capture_default_str();

    const std::vector<std::pair<const char*, const char*>> commands{
        {"verify", "Yang-Baxter, reflection and commutation residuals"},
        {"ed", "exact-diagonalisation ground energy"},
        {"bae", "reduced Bethe roots of the ground state"},
        {"delta-e", "inhomogeneous-term energy shift |E - E_hom| versus L"},
        {"fit", "power-law fit of an L,delta_e CSV"},
        {"density", "root density at filling n"},
        {"ground-energy", "energy report with its components"},
        {"surface-energy", "half-filling surface energy E_b"},
        {"sweep", "parameter sweep producing a curve"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }
    s.command = app.get_subcommands().front()->get_name();

    try {
        if (s.L_values.empty()) s.L_values = {s.L};
        if (s.command == "sweep" && s.curve == "E-vs-n") {
            if (std::isnan(s.from)) s.from = 1.0 / std::max(s.points, 1);
            if (std::isnan(s.to)) s.to = 1.0;
        }
        validate(s.p);
        if (!(s.n > 0.0 && s.n <= 1.0)) throw DomainError("--n must lie in (0, 1]");

        const std::map<std::string, std::function<int(const Settings&)>> dispatch{
            {"verify", run_verify},   {"ed", run_ed},           {"bae", run_bae},
            {"delta-e", run_delta_e}, {"fit", run_fit},         {"density", run_density},
            {"ground-energy", run_ground_energy},               {"surface-energy", run_surface_energy},
            {"sweep", run_sweep}};
        return dispatch.at(s.command)(s);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (residual " << num(e.residual()) << ")\n";
        return kNoConvergence;
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
}
