// rhoci: confidence intervals for a bivariate normal correlation coefficient,
// plus a coverage/length simulation harness. Subcommands: ci, simulate,
// figure, density.

#include "CLI11.hpp"

#include "rhoci/ci_exact.hpp"
#include "rhoci/errors.hpp"
#include "rhoci/methods.hpp"
#include "rhoci/sim.hpp"
#include "rhoci/version.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rhoci;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::vector<MethodId> parse_methods(const std::string& spec) {
    std::vector<MethodId> out;
    if (spec.empty() || spec == "all") {
        for (MethodId id : all_methods()) out.push_back(id);
        return out;
    }
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto id = method_from_name(tok);
        if (!id) throw UsageError("unknown method name: " + tok);
        out.push_back(*id);
    }
    if (out.empty()) throw UsageError("empty method list");
    return out;
}

std::vector<double> parse_doubles(const std::string& spec, const char* what) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(std::string("bad ") + what + " value: " + tok);
        }
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

std::vector<int> parse_ints(const std::string& spec, const char* what) {
    std::vector<int> out;
    for (double v : parse_doubles(spec, what)) {
        int n = static_cast<int>(v);
        if (n != v) throw UsageError(std::string("non-integer ") + what);
        out.push_back(n);
    }
    return out;
}

std::pair<double, double> parse_pair(const std::string& spec, const char* what) {
    auto v = parse_doubles(spec, what);
    if (v.size() != 2) throw UsageError(std::string(what) + " needs two values");
    return {v[0], v[1]};
}

std::uint64_t resolve_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("RHO_CI_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("RHO_CI_SEED is not an unsigned integer");
        }
    }
    return flag_seed;
}

// Two-column numeric input, optional header, comma or whitespace separated.
DataSet read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file: " + path);
    DataSet data;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& ch : line)
            if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
        std::stringstream ss(line);
        double x1, x2;
        if (!(ss >> x1 >> x2)) {
            std::string rest;
            ss.clear();
            if (!(ss >> rest) || lineno > 1)  // blank lines ok, header only on line 1
                if (rest.empty()) continue;
            if (lineno == 1) continue;  // header row
            throw std::runtime_error("parse error in " + path + " at line " +
                                     std::to_string(lineno));
        }
        std::string extra;
        if (ss >> extra)
            throw std::runtime_error("parse error in " + path + " at line " +
                                     std::to_string(lineno) + ": more than two columns");
        data.push_back({x1, x2});
    }
    if (data.empty()) throw std::runtime_error("no data rows in " + path);
    return data;
}

struct ManifestWriter {
    std::vector<std::pair<std::string, std::string>> kv;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { add(k, fmt(v)); }
    void add(const std::string& k, std::uint64_t v) { add(k, std::to_string(v)); }
    void add(const std::string& k, int v) { add(k, std::to_string(v)); }

    void write(const std::string& path) const {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write manifest: " + path);
        out << "version=" << kVersion << "\n";
        for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
        out << "duration_ms=" << ms << "\n";
    }
};

std::string methods_string(const std::vector<MethodId>& ms) {
    std::string out;
    for (MethodId id : ms) {
        if (!out.empty()) out += ',';
        out += method_name(id);
    }
    return out;
}

void write_sim_csv(const std::string& path, const std::vector<SimResult>& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << "dist,n,rho,target,method,coverage,mean_length,failures,reps\n";
    for (const auto& row : table) {
        out << dist_name(row.dist) << ',' << row.n << ',' << fmt(row.rho) << ','
            << fmt(row.target) << ',' << method_name(row.method) << ',';
        if (row.applicable)
            out << fmt(row.coverage) << ',' << fmt(row.mean_length) << ','
                << row.failures << ',' << row.reps << "\n";
        else
            out << "NA,NA,0,0\n";
    }
}

// ---------------------------------------------------------------------------
// ci

struct CiRow {
    MethodId id;
    std::optional<ConfidenceInterval> ci;
    std::string note;
};

int cmd_ci(const std::string& data_path, double r_flag, int n_flag, bool have_r,
           bool have_n, double level, const std::string& methods_spec,
           std::uint64_t seed, int inner_m, const std::string& out_path) {
    auto methods = parse_methods(methods_spec);
    if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0,1)");
    if (inner_m < 100) throw UsageError("--inner-m must be >= 100");

    bool r_mode = have_r || have_n;
    if (r_mode && !data_path.empty())
        throw UsageError("give either a data file or --r/--n, not both");
    if (r_mode && (!have_r || !have_n))
        throw UsageError("--r and --n must be given together");
    if (!r_mode && data_path.empty())
        throw UsageError("need a data file or --r/--n");

    SuffStats stats;
    if (r_mode) {
        if (!(r_flag > -1.0 && r_flag < 1.0)) throw UsageError("--r must lie in (-1,1)");
        if (n_flag < 3) throw UsageError("--n must be >= 3");
        stats = stats_from_r(r_flag, n_flag);
    } else {
        stats = suff_stats(read_data_file(data_path));
    }

    ManifestWriter manifest;
    manifest.add("command", std::string("ci"));
    if (r_mode) {
        manifest.add("r", stats.r);
        manifest.add("n", stats.n);
    } else {
        manifest.add("input", data_path);
        manifest.add("n", stats.n);
        manifest.add("r", stats.r);
    }
    manifest.add("level", level);
    manifest.add("methods", methods_string(methods));
    manifest.add("seed", seed);
    manifest.add("inner_m", inner_m);

    MCConfig mc{inner_m};
    std::vector<CiRow> rows;
    for (MethodId id : methods) {
        CiRow row{id, std::nullopt, ""};
        if (r_mode && method_needs_raw_data(id)) {
            row.note = "requires raw data";
        } else if (stats.n < method_min_n(id)) {
            row.note = "not applicable at n=" + std::to_string(stats.n);
        } else {
            RngStream rng(seed, static_cast<std::uint64_t>(id) + 1);
            try {
                row.ci = compute_interval(id, stats, level, mc, rng);
            } catch (const std::exception& e) {
                row.note = std::string("failed: ") + e.what();
            }
        }
        rows.push_back(row);
    }

    // stdout table
    std::printf("# n=%d r=%s level=%s seed=%llu\n", stats.n, fmt(stats.r).c_str(),
                fmt(level).c_str(), static_cast<unsigned long long>(seed));
    std::printf("%-20s %10s %10s %-6s %s\n", "method", "lower", "upper", "clamp", "note");
    for (const auto& row : rows) {
        if (row.ci) {
            std::string clamp = std::string(row.ci->clamped_lower ? "L" : "-") +
                                (row.ci->clamped_upper ? "U" : "-");
            std::printf("%-20s %10s %10s %-6s %s\n",
                        std::string(method_name(row.id)).c_str(),
                        fmt3(row.ci->lower).c_str(), fmt3(row.ci->upper).c_str(),
                        clamp.c_str(), row.note.c_str());
        } else {
            std::printf("%-20s %10s %10s %-6s %s\n",
                        std::string(method_name(row.id)).c_str(), "-", "-", "--",
                        row.note.c_str());
        }
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write output file: " + out_path);
        out << "method,lower,upper,clamped_lower,clamped_upper,note\n";
        for (const auto& row : rows) {
            out << method_name(row.id) << ',';
            if (row.ci)
                out << fmt(row.ci->lower) << ',' << fmt(row.ci->upper) << ','
                    << (row.ci->clamped_lower ? 1 : 0) << ','
                    << (row.ci->clamped_upper ? 1 : 0) << ',';
            else
                out << ",,,,";
            out << row.note << "\n";
        }
        manifest.add("out", out_path);
        manifest.write(out_path + ".manifest");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate / figure

SimConfig build_sim_config(const std::string& dist, double df, const std::string& mu,
                           const std::string& sigma, const std::string& rho_grid,
                           const std::string& n_grid, int reps, double level,
                           const std::string& methods_spec, std::uint64_t seed,
                           int inner_m, int threads, bool failures_as_misses,
                           bool full_reps) {
    SimConfig cfg;
    if (dist == "normal") cfg.dist = Dist::Normal;
    else if (dist == "t") cfg.dist = Dist::StudentT;
    else if (dist == "lognormal") cfg.dist = Dist::LogNormal;
    else throw UsageError("--dist must be normal, t, or lognormal");
    cfg.df = df;
    cfg.mu = parse_pair(mu, "--mu");
    cfg.sigma = parse_pair(sigma, "--sigma");
    if (!(cfg.sigma.first > 0.0 && cfg.sigma.second > 0.0))
        throw UsageError("--sigma values must be positive");
    cfg.rho_grid = parse_doubles(rho_grid, "--rho-grid");
    for (double rho : cfg.rho_grid)
        if (!(rho > -1.0 && rho < 1.0)) throw UsageError("--rho-grid values must lie in (-1,1)");
    cfg.n_grid = parse_ints(n_grid, "--n-grid");
    for (int n : cfg.n_grid)
        if (n < 2) throw UsageError("--n-grid values must be >= 2");
    if (reps < 100) throw UsageError("--reps must be >= 100");
    cfg.reps = reps;
    if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0,1)");
    cfg.level = level;
    cfg.methods = parse_methods(methods_spec);
    if (inner_m < 100) throw UsageError("--inner-m must be >= 100");
    cfg.inner_m = inner_m;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.failures_as_misses = failures_as_misses;
    cfg.full_reps_expensive = full_reps;
    if (cfg.dist == Dist::StudentT && !(cfg.df > 2.0))
        throw UsageError("--df must be > 2 for t sampling");
    return cfg;
}

void fill_manifest(ManifestWriter& m, const SimConfig& cfg) {
    m.add("dist", std::string(dist_name(cfg.dist)));
    if (cfg.dist == Dist::StudentT) m.add("df", cfg.df);
    m.add("mu", fmt(cfg.mu.first) + "," + fmt(cfg.mu.second));
    m.add("sigma", fmt(cfg.sigma.first) + "," + fmt(cfg.sigma.second));
    std::string rhos;
    for (double rho : cfg.rho_grid) rhos += (rhos.empty() ? "" : ",") + fmt(rho);
    m.add("rho_grid", rhos);
    std::string ns;
    for (int n : cfg.n_grid) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    m.add("n_grid", ns);
    m.add("reps", cfg.reps);
    m.add("level", cfg.level);
    m.add("methods", methods_string(cfg.methods));
    m.add("seed", cfg.seed);
    m.add("inner_m", cfg.inner_m);
    m.add("threads", cfg.threads);
    m.add("failures_as_misses", cfg.failures_as_misses ? 1 : 0);
    m.add("full_reps", cfg.full_reps_expensive ? 1 : 0);
}

int cmd_simulate(const SimConfig& cfg, const std::string& out_path) {
    ManifestWriter manifest;
    manifest.add("command", std::string("simulate"));
    fill_manifest(manifest, cfg);
    auto table = run_grid(cfg);
    write_sim_csv(out_path, table);
    manifest.add("out", out_path);
    manifest.write(out_path + ".manifest");
    std::fprintf(stderr, "wrote %zu rows to %s\n", table.size(), out_path.c_str());
    return 0;
}

int cmd_figure(SimConfig cfg, const std::vector<int>& n_values,
               const std::string& prefix) {
    cfg.rho_grid.clear();
    for (int i = 0; i <= 9; ++i) cfg.rho_grid.push_back(i / 10.0);
    ManifestWriter manifest;
    manifest.add("command", std::string("figure"));
    for (int n : n_values) {
        cfg.n_grid = {n};
        auto table = run_grid(cfg);
        std::string cov_path = prefix + "_cov_n" + std::to_string(n) + ".csv";
        std::string len_path = prefix + "_len_n" + std::to_string(n) + ".csv";
        std::ofstream cov(cov_path), len(len_path);
        if (!cov || !len)
            throw std::runtime_error("cannot write figure outputs for prefix " + prefix);
        cov << "rho,method,coverage\n";
        len << "rho,method,mean_length\n";
        for (const auto& row : table) {
            cov << fmt(row.rho) << ',' << method_name(row.method) << ','
                << (row.applicable ? fmt(row.coverage) : "NA") << "\n";
            len << fmt(row.rho) << ',' << method_name(row.method) << ','
                << (row.applicable ? fmt(row.mean_length) : "NA") << "\n";
        }
    }
    fill_manifest(manifest, cfg);
    std::string ns;
    for (int n : n_values) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    manifest.add("figure_n", ns);
    manifest.add("out_prefix", prefix);
    manifest.write(prefix + ".manifest");
    return 0;
}

// ---------------------------------------------------------------------------
// density

int cmd_density(int n, double rho, int grid_points, const std::string& out_path) {
    if (n < 4) throw UsageError("--n must be >= 4");
    if (!(rho > -1.0 && rho < 1.0)) throw UsageError("--rho must lie in (-1,1)");
    if (grid_points < 3) throw UsageError("--grid-points must be >= 3");
    ManifestWriter manifest;
    manifest.add("command", std::string("density"));
    manifest.add("n", n);
    manifest.add("rho", rho);
    manifest.add("grid_points", grid_points);

    const double edge = 1.0 - 1e-9;
    ExactDensityParams params{n, rho};
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << "r,density\n";
    for (int i = 0; i < grid_points; ++i) {
        double r = -edge + 2.0 * edge * i / (grid_points - 1.0);
        out << fmt(r) << ',' << fmt(exact_density(r, params)) << "\n";
    }
    manifest.add("out", out_path);
    manifest.write(out_path + ".manifest");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval estimators for a bivariate normal correlation coefficient"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("rhoci ") + kVersion);

    // ci
    auto* ci = app.add_subcommand("ci", "intervals for a data file or a given (r, n)");
    std::string ci_data;
    double ci_r = 0.0;
    int ci_n = 0;
    double ci_level = 0.95;
    std::string ci_methods = "all";
    std::uint64_t ci_seed = 12345;
    int ci_inner_m = 10000;
    std::string ci_out;
    ci->add_option("data", ci_data, "two-column CSV of paired observations");
    auto* opt_r = ci->add_option("--r", ci_r, "sample correlation in (-1,1)");
    auto* opt_n = ci->add_option("--n", ci_n, "sample size");
    ci->add_option("--level", ci_level, "confidence level (default 0.95)");
    ci->add_option("--methods", ci_methods, "comma list of methods, or 'all'");
    ci->add_option("--seed", ci_seed, "RNG seed for the Monte Carlo methods");
    ci->add_option("--inner-m", ci_inner_m, "inner Monte Carlo draws (default 10000)");
    ci->add_option("--out", ci_out, "also write a CSV (plus .manifest)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "coverage/length grid to a CSV");
    std::string sim_dist = "normal", sim_mu = "0,0", sim_sigma = "1,1";
    std::string sim_rho_grid, sim_n_grid, sim_methods = "all", sim_out;
    double sim_df = 5.0, sim_level = 0.95;
    int sim_reps = 10000, sim_inner_m = 10000, sim_threads = 0;
    bool sim_fam = false, sim_full = false;
    sim->add_option("--dist", sim_dist, "normal | t | lognormal")->required();
    sim->add_option("--df", sim_df, "t degrees of freedom (default 5)");
    sim->add_option("--mu", sim_mu, "means, e.g. 1,2");
    sim->add_option("--sigma", sim_sigma, "marginal sigmas, e.g. 1,3");
    sim->add_option("--rho-grid", sim_rho_grid, "comma list of rho values")->required();
    sim->add_option("--n-grid", sim_n_grid, "comma list of sample sizes")->required();
    sim->add_option("--reps", sim_reps, "replicates per cell (default 10000)");
    sim->add_option("--level", sim_level, "confidence level (default 0.95)");
    sim->add_option("--methods", sim_methods, "comma list of methods, or 'all'");
    sim->add_option("--inner-m", sim_inner_m, "inner Monte Carlo draws");
    sim->add_option("--threads", sim_threads, "worker threads (0 = all cores)");
    sim->add_flag("--failures-as-misses", sim_fam,
                  "count failed replicates as misses instead of dropping them");
    sim->add_flag("--full-reps", sim_full,
                  "run the expensive methods at full reps (default caps them at 2000)");
    sim->add_option("--out", sim_out, "output CSV path")->required();

    // figure
    auto* fig = app.add_subcommand("figure", "plot-ready coverage/length CSVs");
    std::string fig_dist = "normal", fig_mu = "0,0", fig_sigma = "1,1";
    std::string fig_methods = "all", fig_out;
    std::vector<int> fig_n;
    double fig_df = 5.0, fig_level = 0.95;
    int fig_reps = 10000, fig_inner_m = 10000, fig_threads = 0;
    bool fig_full = false;
    fig->add_option("--dist", fig_dist, "normal | t | lognormal (default normal)");
    fig->add_option("--df", fig_df, "t degrees of freedom");
    fig->add_option("--mu", fig_mu, "means");
    fig->add_option("--sigma", fig_sigma, "marginal sigmas");
    fig->add_option("--n", fig_n, "sample size (repeatable)")->required();
    fig->add_option("--reps", fig_reps, "replicates per cell");
    fig->add_option("--level", fig_level, "confidence level");
    fig->add_option("--methods", fig_methods, "comma list of methods, or 'all'");
    fig->add_option("--inner-m", fig_inner_m, "inner Monte Carlo draws");
    fig->add_option("--threads", fig_threads, "worker threads (0 = all cores)");
    fig->add_flag("--full-reps", fig_full, "full reps for the expensive methods");
    fig->add_option("--out", fig_out, "output file prefix")->required();

    // density
    auto* den = app.add_subcommand("density", "sample-correlation density curve");
    int den_n = 0, den_points = 2001;
    double den_rho = 0.0;
    std::string den_out;
    den->add_option("--n", den_n, "sample size (>= 4)")->required();
    den->add_option("--rho", den_rho, "population correlation")->required();
    den->add_option("--grid-points", den_points, "grid size (default 2001)");
    den->add_option("--out", den_out, "output CSV path")->required();

    std::uint64_t seed_flag = 12345;
    sim->add_option("--seed", seed_flag, "base RNG seed");
    fig->add_option("--seed", seed_flag, "base RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ci->parsed())
            return cmd_ci(ci_data, ci_r, ci_n, opt_r->count() > 0, opt_n->count() > 0,
                          ci_level, ci_methods, resolve_seed(ci_seed), ci_inner_m, ci_out);
        if (sim->parsed()) {
            SimConfig cfg = build_sim_config(sim_dist, sim_df, sim_mu, sim_sigma,
                                             sim_rho_grid, sim_n_grid, sim_reps, sim_level,
                                             sim_methods, resolve_seed(seed_flag),
                                             sim_inner_m, sim_threads, sim_fam, sim_full);
            return cmd_simulate(cfg, sim_out);
        }
        if (fig->parsed()) {
            SimConfig cfg = build_sim_config(fig_dist, fig_df, fig_mu, fig_sigma, "0",
                                             "5", fig_reps, fig_level, fig_methods,
                                             resolve_seed(seed_flag), fig_inner_m,
                                             fig_threads, false, fig_full);
            return cmd_figure(cfg, fig_n, fig_out);
        }
        if (den->parsed()) return cmd_density(den_n, den_rho, den_points, den_out);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
