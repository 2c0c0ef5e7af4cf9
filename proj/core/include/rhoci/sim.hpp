#ifndef RHOCI_SIM_HPP
#define RHOCI_SIM_HPP

#include "rhoci/interval.hpp"

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace rhoci {

enum class Dist { Normal, StudentT, LogNormal };

std::string_view dist_name(Dist d);

struct SimConfig {
    Dist dist = Dist::Normal;
    double df = 5.0;  // StudentT only
    std::pair<double, double> mu{0.0, 0.0};
    std::pair<double, double> sigma{1.0, 1.0};
    std::vector<double> rho_grid;
    std::vector<int> n_grid;
    int reps = 10000;
    double level = 0.95;
    std::vector<MethodId> methods;
    int inner_m = 10000;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware concurrency
    // Score a failed replicate as a miss instead of dropping it from the
    // method's denominator.
    bool failures_as_misses = false;
    // Lift the desk-scale cap of 2000 replicates on the expensive methods
    // (Exact, SignedLR, ModifiedSignedLR).
    bool full_reps_expensive = false;
};

struct SimResult {
    Dist dist = Dist::Normal;
    int n = 0;
    double rho = 0.0;
    double target = 0.0;  // rho, or rho* under log-normal sampling
    MethodId method = MethodId::FisherZ;
    double coverage = 0.0;
    double mean_length = 0.0;
    int failures = 0;
    int reps = 0;
    bool applicable = true;  // false for the "---" cells below the method's min n
};

// Induced Pearson correlation of a bivariate log-normal vector.
double lognormal_rho_star(double rho, double sigma1, double sigma2);

// Replicates a single (dist, n, rho) cell for every configured method.
// Deterministic for a fixed config seed, independent of thread count.
std::vector<SimResult> run_cell(const SimConfig& cfg, int n, double rho);

// Cartesian product over n_grid x rho_grid; cells are independently seeded
// from a hash of the cell key.
std::vector<SimResult> run_grid(const SimConfig& cfg);

}  // namespace rhoci

#endif
