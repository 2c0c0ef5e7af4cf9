#include "rhoci/ci_montecarlo.hpp"

#include "rhoci/distributions.hpp"
#include "rhoci/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhoci {

namespace {

void check_mc(int n, double alpha, const MCConfig& cfg) {
    if (n < 3) throw method_not_applicable("monte carlo ci: needs n >= 3");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("monte carlo ci: alpha must lie in (0,1)");
    if (cfg.m < 100) throw std::domain_error("monte carlo ci: m must be >= 100");
}

constexpr double kNearOne = 1.0 - 1e-12;

}  // namespace

BartlettDraw bartlett_draw(int n, RngStream& rng) {
    if (n < 3) throw std::domain_error("bartlett_draw: needs n >= 3");
    BartlettDraw d;
    d.v = std::sqrt(rng.chisq(n - 1.0));
    d.w = std::sqrt(rng.chisq(n - 2.0));
    d.nn = rng.normal();
    return d;
}

double pb_sample_r(double rtilde, int n, RngStream& rng) {
    BartlettDraw d = bartlett_draw(n, rng);
    double t = rtilde * d.v + d.nn;
    return t / std::sqrt(t * t + d.w * d.w);
}

ConfidenceInterval pb_ci(double r, int n, double alpha, const MCConfig& cfg,
                         RngStream& rng) {
    check_mc(n, alpha, cfg);
    if (std::fabs(r) >= kNearOne)
        return degenerate_interval(r, MethodId::PB, 1.0 - alpha);
    double z = std::atanh(r);
    double rtilde = r / std::sqrt((1.0 - r) * (1.0 + r));
    std::vector<double> qb(cfg.m);
    for (double& q : qb) {
        double rb = pb_sample_r(rtilde, n, rng);
        double zb = std::atanh(rb);
        q = (zb - z) * (zb - z);
    }
    std::sort(qb.begin(), qb.end());
    double half = std::sqrt(empirical_quantile(qb, 1.0 - alpha));
    return make_interval(std::tanh(z - half), std::tanh(z + half), MethodId::PB,
                         1.0 - alpha);
}

double kx_pivot_draw(double rtilde, int n, RngStream& rng) {
    // v11^2 ~ chi2(n-1) guards the denominator, r-tilde rides on chi2(n-2).
    BartlettDraw d = bartlett_draw(n, rng);
    double t = rtilde * d.w - d.nn;
    return t / std::sqrt(t * t + d.v * d.v);
}

ConfidenceInterval kx_ci(double r, int n, double alpha, const MCConfig& cfg,
                         RngStream& rng) {
    check_mc(n, alpha, cfg);
    if (std::fabs(r) >= kNearOne)
        return degenerate_interval(r, MethodId::KrishnamoorthyGCI, 1.0 - alpha);
    double rtilde = r / std::sqrt((1.0 - r) * (1.0 + r));
    std::vector<double> draws(cfg.m);
    for (double& g : draws) g = kx_pivot_draw(rtilde, n, rng);
    std::sort(draws.begin(), draws.end());
    return make_interval(empirical_quantile(draws, alpha / 2.0),
                         empirical_quantile(draws, 1.0 - alpha / 2.0),
                         MethodId::KrishnamoorthyGCI, 1.0 - alpha);
}

ConfidenceInterval new_gci(const SuffStats& stats, double alpha, const MCConfig& cfg,
                           RngStream& rng) {
    check_mc(stats.n, alpha, cfg);
    CovMatrix2 a{stats.a11, stats.a12, stats.a22};
    if (!(a.det() > 0.0))
        throw degenerate_data("new_gci: singular scatter matrix");
    CovMatrix2 a_inv = inverse2(a);
    std::vector<double> draws(cfg.m);
    for (double& g : draws) {
        CovMatrix2 vstar = sample_wishart2(rng, stats.n - 1, a_inv);
        g = -vstar.s12 / std::sqrt(vstar.s11 * vstar.s22);
    }
    std::sort(draws.begin(), draws.end());
    return make_interval(empirical_quantile(draws, alpha / 2.0),
                         empirical_quantile(draws, 1.0 - alpha / 2.0),
                         MethodId::NewGCI, 1.0 - alpha);
}

double empirical_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::domain_error("empirical_quantile: empty sample");
    const int m = static_cast<int>(sorted.size());
    double h = q * (m + 1.0);
    int lo = static_cast<int>(std::floor(h));
    double frac = h - lo;
    if (lo < 1) return sorted.front();
    if (lo >= m) return sorted.back();
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

}  // namespace rhoci
