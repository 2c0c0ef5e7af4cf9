#include "rhoci/sim.hpp"

#include "rhoci/distributions.hpp"
#include "rhoci/errors.hpp"
#include "rhoci/methods.hpp"
#include "rhoci/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rhoci {

namespace {

constexpr std::uint64_t kDataSalt = 0x64617461u;  // per-replicate data stream
constexpr std::uint64_t kCellSalt = 0x63656C6Cu;

std::uint64_t rho_bits(double rho) { return std::bit_cast<std::uint64_t>(rho); }

bool is_expensive(MethodId id) {
    return id == MethodId::Exact || id == MethodId::SignedLR ||
           id == MethodId::ModifiedSignedLR;
}

int reps_for_method(const SimConfig& cfg, MethodId id) {
    if (!cfg.full_reps_expensive && is_expensive(id))
        return std::min(cfg.reps, 2000);
    return cfg.reps;
}

struct RepOutcome {
    // Per method: -1 failed, 0 missed, 1 covered; length only when >= 0.
    std::vector<signed char> state;
    std::vector<double> length;
};

void validate(const SimConfig& cfg) {
    if (cfg.reps < 100) throw std::domain_error("sim: reps must be >= 100");
    if (!(cfg.level > 0.0 && cfg.level < 1.0))
        throw std::domain_error("sim: level must lie in (0,1)");
    if (cfg.methods.empty()) throw std::domain_error("sim: no methods requested");
    for (double rho : cfg.rho_grid)
        if (!(rho > -1.0 && rho < 1.0))
            throw std::domain_error("sim: rho must lie in (-1,1)");
    for (int n : cfg.n_grid)
        if (n < 2) throw std::domain_error("sim: n must be >= 2");
    if (cfg.dist == Dist::StudentT && !(cfg.df > 2.0))
        throw std::domain_error("sim: t sampling needs df > 2");
}

}  // namespace

std::string_view dist_name(Dist d) {
    switch (d) {
        case Dist::Normal: return "normal";
        case Dist::StudentT: return "t";
        case Dist::LogNormal: return "lognormal";
    }
    return "unknown";
}

double lognormal_rho_star(double rho, double sigma1, double sigma2) {
    if (!(sigma1 > 0.0 && sigma2 > 0.0))
        throw std::domain_error("lognormal_rho_star: sigmas must be positive");
    if (!(rho > -1.0 && rho < 1.0))
        throw std::domain_error("lognormal_rho_star: rho must lie in (-1,1)");
    return std::expm1(rho * sigma1 * sigma2) /
           std::sqrt(std::expm1(sigma1 * sigma1) * std::expm1(sigma2 * sigma2));
}

std::vector<SimResult> run_cell(const SimConfig& cfg, int n, double rho) {
    validate(cfg);
    const std::size_t nm = cfg.methods.size();
    const std::uint64_t cell = mix64(kCellSalt, static_cast<std::uint64_t>(n),
                                     rho_bits(rho), static_cast<std::uint64_t>(cfg.dist));
    const double target = cfg.dist == Dist::LogNormal
                              ? lognormal_rho_star(rho, cfg.sigma.first, cfg.sigma.second)
                              : rho;
    const CovMatrix2 sigma = make_cov(cfg.sigma.first, cfg.sigma.second, rho);
    const MCConfig mc{cfg.inner_m};

    std::vector<int> method_reps(nm);
    int max_reps = 0;
    for (std::size_t j = 0; j < nm; ++j) {
        bool ok = n >= method_min_n(cfg.methods[j]);
        method_reps[j] = ok ? reps_for_method(cfg, cfg.methods[j]) : 0;
        max_reps = std::max(max_reps, method_reps[j]);
    }

    // Replicate outcomes are filled independently (parallel-safe), then
    // reduced serially so results do not depend on the thread count.
    std::vector<RepOutcome> outcomes(max_reps);

    auto run_replicate = [&](int rep) {
        RepOutcome& out = outcomes[rep];
        out.state.assign(nm, -1);
        out.length.assign(nm, 0.0);
        RngStream data_rng(cfg.seed, mix64(cell, static_cast<std::uint64_t>(rep), kDataSalt));
        DataSet data;
        switch (cfg.dist) {
            case Dist::Normal:
                data = sample_bvnormal(data_rng, cfg.mu, sigma, n);
                break;
            case Dist::StudentT:
                data = sample_bvt(data_rng, cfg.mu, sigma, cfg.df, n);
                break;
            case Dist::LogNormal:
                data = sample_bvlognormal(data_rng, cfg.mu, sigma, n);
                break;
        }
        SuffStats stats;
        bool have_stats = true;
        try {
            stats = suff_stats(data);
        } catch (const degenerate_data&) {
            have_stats = false;  // every method fails on this replicate
        }
        for (std::size_t j = 0; j < nm; ++j) {
            if (rep >= method_reps[j]) continue;
            if (!have_stats) continue;
            MethodId id = cfg.methods[j];
            RngStream method_rng(cfg.seed,
                                 mix64(cell, static_cast<std::uint64_t>(rep),
                                       static_cast<std::uint64_t>(id) + 1000));
            try {
                ConfidenceInterval ci = compute_interval(id, stats, cfg.level, mc, method_rng);
                out.state[j] = ci.contains(target) ? 1 : 0;
                out.length[j] = ci.length();
            } catch (const method_failure&) {
            } catch (const numeric_error&) {
            } catch (const degenerate_data&) {
            } catch (const singular_transform&) {
            }
        }
    };

    int hw = cfg.threads > 0 ? cfg.threads
                             : static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int nthreads = std::min(hw, max_reps);
    if (nthreads <= 1) {
        for (int rep = 0; rep < max_reps; ++rep) run_replicate(rep);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (int rep = t; rep < max_reps; rep += nthreads) run_replicate(rep);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<SimResult> results(nm);
    for (std::size_t j = 0; j < nm; ++j) {
        SimResult& res = results[j];
        res.dist = cfg.dist;
        res.n = n;
        res.rho = rho;
        res.target = target;
        res.method = cfg.methods[j];
        res.reps = method_reps[j];
        res.applicable = method_reps[j] > 0;
        if (!res.applicable) continue;
        long covered = 0, failed = 0, lengths = 0;
        double length_sum = 0.0;
        for (int rep = 0; rep < method_reps[j]; ++rep) {
            signed char st = outcomes[rep].state[j];
            if (st < 0) {
                ++failed;
                continue;
            }
            covered += st;
            length_sum += outcomes[rep].length[j];
            ++lengths;
        }
        res.failures = static_cast<int>(failed);
        long denom = cfg.failures_as_misses ? method_reps[j] : method_reps[j] - failed;
        res.coverage = denom > 0 ? static_cast<double>(covered) / denom : 0.0;
        res.mean_length = lengths > 0 ? length_sum / lengths : 0.0;
    }
    return results;
}

std::vector<SimResult> run_grid(const SimConfig& cfg) {
    validate(cfg);
    std::vector<SimResult> table;
    table.reserve(cfg.n_grid.size() * cfg.rho_grid.size() * cfg.methods.size());
    for (int n : cfg.n_grid)
        for (double rho : cfg.rho_grid) {
            auto cell = run_cell(cfg, n, rho);
            table.insert(table.end(), cell.begin(), cell.end());
        }
    return table;
}

}  // namespace rhoci
