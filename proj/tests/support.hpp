#ifndef RHOCI_TESTS_SUPPORT_HPP
#define RHOCI_TESTS_SUPPORT_HPP

// Test-only oracles, independent of the library implementation paths they
// check: series-based normal CDF, Simpson quadrature, grid-scan root finding,
// and a Kolmogorov-Smirnov distance helper.

#include "rhoci/ci_exact.hpp"
#include "rhoci/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Dense interpolated CDF of the exact sample-correlation law, built once by
// panelwise quadrature in atanh coordinates; used for PIT-based KS tests
// against large draw sets.
class CdfTable {
public:
    CdfTable(int n, double rho, int cells = 4000) {
        rhoci::ExactDensityParams p{n, rho};
        double lo = -12.0, hi = 12.0;
        us_.reserve(cells + 1);
        cum_.reserve(cells + 1);
        us_.push_back(lo);
        cum_.push_back(0.0);
        double acc = 0.0;
        for (int i = 1; i <= cells; ++i) {
            double a = lo + (hi - lo) * (i - 1) / cells;
            double b = lo + (hi - lo) * i / cells;
            acc += rhoci::adaptive_gk15(
                [&](double u) {
                    double t = std::tanh(u);
                    return rhoci::exact_density(t, p) * (1.0 - t * t);
                },
                a, b, 1e-11);
            us_.push_back(b);
            cum_.push_back(acc);
        }
        total_ = acc;
    }

    double operator()(double r) const {
        double u = std::atanh(std::fmax(-0.99999999, std::fmin(0.99999999, r)));
        if (u <= us_.front()) return 0.0;
        if (u >= us_.back()) return 1.0;
        std::size_t lo = 0, hi = us_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (us_[mid] <= u) lo = mid; else hi = mid;
        }
        double frac = (u - us_[lo]) / (us_[hi] - us_[lo]);
        return (cum_[lo] + frac * (cum_[hi] - cum_[lo])) / total_;
    }

private:
    std::vector<double> us_, cum_;
    double total_ = 0.0;
};

// erf by its Maclaurin series (alternating, fine for |x| <= 5).
inline double erf_series(double x) {
    double term = x;
    double sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / k;
        double add = term / (2.0 * k + 1.0);
        sum += add;
        if (std::fabs(add) < 1e-17 * std::fabs(sum)) break;
    }
    return sum * 2.0 / std::sqrt(3.14159265358979323846);
}

inline double normal_cdf_series(double x) {
    return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0)));
}

// Bisection on a monotone increasing function.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double target, double tol) {
    double flo = f(lo) - target;
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((f(mid) - target > 0.0) == (flo > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Composite Simpson rule on a fixed grid (panels must be even).
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels) {
    double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Scans g over a uniform grid in (-1, 1) and returns the midpoint of the
// first cell where g - target changes sign; npoints cells of width 2/npoints.
inline double grid_scan_root(const std::function<double(double)>& g, double target,
                             int npoints) {
    double prev_x = -1.0 + 2.0 * 0.5 / npoints;
    double prev = g(prev_x) - target;
    for (int i = 1; i < npoints; ++i) {
        double x = -1.0 + 2.0 * (i + 0.5) / npoints;
        double cur = g(x) - target;
        if ((cur > 0.0) != (prev > 0.0)) return 0.5 * (prev_x + x);
        prev_x = x;
        prev = cur;
    }
    throw std::runtime_error("grid_scan_root: no sign change");
}

// Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double u = cdf(sample[i]);
        d = std::fmax(d, std::fabs(u - i / n));
        d = std::fmax(d, std::fabs((i + 1) / n - u));
    }
    return d;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

// Plain sample correlation (divisor-free ratio form).
inline double sample_corr(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = mean(x), my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracle

#endif
