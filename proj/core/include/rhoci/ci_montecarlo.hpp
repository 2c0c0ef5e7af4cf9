#ifndef RHOCI_CI_MONTECARLO_HPP
#define RHOCI_CI_MONTECARLO_HPP

#include "rhoci/interval.hpp"
#include "rhoci/rng.hpp"
#include "rhoci/summary.hpp"

#include <vector>

namespace rhoci {

struct MCConfig {
    int m = 10000;  // inner Monte Carlo draws, >= 100
};

// One triangular-decomposition draw shared by the pivot constructions:
// v^2 ~ chi2(n-1), w^2 ~ chi2(n-2), nn ~ N(0,1), all independent.
struct BartlettDraw {
    double v;
    double w;
    double nn;
};
BartlettDraw bartlett_draw(int n, RngStream& rng);

// One draw of the artificial sample correlation R^B for given r-tilde.
double pb_sample_r(double rtilde, int n, RngStream& rng);

// Percentile-bootstrap interval on the z scale: symmetric half-width from
// the (1-alpha) quantile of (Z^B - atanh r)^2.
ConfidenceInterval pb_ci(double r, int n, double alpha, const MCConfig& cfg,
                         RngStream& rng);

// One draw of the generalized pivot of Krishnamoorthy and Xia.
double kx_pivot_draw(double rtilde, int n, RngStream& rng);

// Equal-tail percentiles of m pivot draws.
ConfidenceInterval kx_ci(double r, int n, double alpha, const MCConfig& cfg,
                         RngStream& rng);

// Wishart-based generalized pivot: draws V* ~ W(n-1, a^{-1}) from the
// scatter matrix a = nS and takes percentiles of -V*12 / sqrt(V*11 V*22).
ConfidenceInterval new_gci(const SuffStats& stats, double alpha, const MCConfig& cfg,
                           RngStream& rng);

// Order statistics with linear interpolation between ranks floor(q(m+1))
// and ceil(q(m+1)); "sorted" must be ascending.
double empirical_quantile(const std::vector<double>& sorted, double q);

}  // namespace rhoci

#endif
