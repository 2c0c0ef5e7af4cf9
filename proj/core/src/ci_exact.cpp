#include "rhoci/ci_exact.hpp"

#include "rhoci/errors.hpp"
#include "rhoci/quadrature.hpp"
#include "rhoci/special.hpp"

#include <cmath>
#include <stdexcept>

namespace rhoci {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void check_params(int n, double rho) {
    if (n < 4) throw std::domain_error("exact density: needs n >= 4");
    if (!(rho > -1.0 && rho < 1.0))
        throw std::domain_error("exact density: |rho| must be < 1");
}

// Density evaluations for one (n, rho); hoists the r-independent prefactor.
class ExactDist {
public:
    ExactDist(int n, double rho) : n_(n), rho_(rho) {
        check_params(n, rho);
        logpref_ = std::log(n - 2.0) + std::lgamma(n - 1.0) +
                   0.5 * (n - 1.0) * std::log1p(-rho * rho) - 0.5 * kLog2Pi -
                   std::lgamma(n - 0.5);
        c_ = n - 0.5;
        log_conn_a_ = std::lgamma(n - 0.5) + std::lgamma(n - 1.5) -
                      2.0 * std::lgamma(n - 1.0);
        conn_b_ = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n-1)
    }

    // 2F1(1/2, 1/2; n - 1/2; x). The direct series stalls as x -> 1, so past
    // 0.95 the two-series linear transformation in 1-x takes over (both its
    // c parameters stay clear of the non-positive integers).
    double hyp(double x) const {
        if (x < 0.95) return special::gauss_2f1(0.5, 0.5, c_, x);
        double y = 1.0 - x;
        double f1 = special::gauss_2f1(0.5, 0.5, 2.5 - n_, y);
        double f2 = special::gauss_2f1(n_ - 1.0, n_ - 1.0, c_, y);
        return std::exp(log_conn_a_) * f1 +
               conn_b_ * std::exp((n_ - 1.5) * std::log(y)) * f2;
    }

    double density(double r) const {
        double lg = logpref_ + 0.5 * (n_ - 4.0) * std::log1p(-r * r) -
                    (n_ - 1.5) * std::log1p(-rho_ * r);
        return std::exp(lg) * hyp(0.5 * (1.0 + rho_ * r));
    }

    // Integrand after the substitution r = tanh(u).
    double density_u(double u) const {
        double t = std::tanh(u);
        double sech2 = 1.0 - t * t;
        if (sech2 <= 0.0) return 0.0;
        double lg = logpref_ + 0.5 * (n_ - 2.0) * std::log(sech2) -
                    (n_ - 1.5) * std::log1p(-rho_ * t);
        return std::exp(lg) * hyp(0.5 * (1.0 + rho_ * t));
    }

    // Point below which the remaining lower-tail mass is < ~1e-12.
    double u_floor() const {
        double tail_amp = -std::log1p(-std::fabs(rho_));
        double u = -(30.0 + std::log(static_cast<double>(n_)) + 0.694 * (n_ - 2.0) +
                     (n_ - 1.5) * tail_amp) /
                   (n_ - 2.0);
        return std::fmin(u, -4.0);
    }

    double cdf(double r, double tol) const {
        if (r <= -1.0) return 0.0;
        if (r >= 1.0) return 1.0;
        double hi = std::atanh(r);
        double lo = u_floor();
        if (hi <= lo) {
            // below the numerically relevant support
            return adaptive_gk15([this](double u) { return density_u(u); },
                                 hi - 1.0, hi, tol);
        }
        return adaptive_gk15([this](double u) { return density_u(u); }, lo, hi, tol);
    }

private:
    int n_;
    double rho_;
    double logpref_;
    double c_;
    double log_conn_a_;
    double conn_b_;
};

}  // namespace

double exact_density(double r, const ExactDensityParams& p) {
    check_params(p.n, p.rho);
    if (!(r > -1.0 && r < 1.0))
        throw std::domain_error("exact_density: |r| must be < 1");
    return ExactDist(p.n, p.rho).density(r);
}

double exact_cdf(double r, const ExactDensityParams& p) {
    check_params(p.n, p.rho);
    return ExactDist(p.n, p.rho).cdf(r, 1e-8);
}

ConfidenceInterval exact_ci(double r_obs, int n, double alpha) {
    if (n < 4) throw method_not_applicable("exact_ci: needs n >= 4");
    if (!(r_obs > -1.0 && r_obs < 1.0))
        return degenerate_interval(r_obs, MethodId::Exact, 1.0 - alpha);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("exact_ci: alpha must lie in (0,1)");

    const double edge = 1.0 - 1e-9;
    // cdf(r_obs; rho) is strictly decreasing in rho.
    auto cdf_at = [&](double rho, double tol) {
        return ExactDist(n, rho).cdf(r_obs, tol);
    };
    auto solve_tail = [&](double target, bool* clamped) {
        *clamped = false;
        double lo = -edge, hi = edge;
        double flo = cdf_at(lo, 1e-8) - target;
        double fhi = cdf_at(hi, 1e-8) - target;
        if (flo <= 0.0) {
            *clamped = true;
            return -1.0;
        }
        if (fhi >= 0.0) {
            *clamped = true;
            return 1.0;
        }
        while (hi - lo > 1e-7) {
            double mid = 0.5 * (lo + hi);
            // Coarse quadrature while the bracket is wide, full precision after.
            double tol = (hi - lo) > 1e-3 ? 1e-6 : 1e-8;
            double fm = cdf_at(mid, tol) - target;
            if (fm > 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    bool cl = false, cu = false;
    double upper = solve_tail(alpha / 2.0, &cu);        // cdf(r_obs; rho_U) = a/2
    double lower = solve_tail(1.0 - alpha / 2.0, &cl);  // 1 - cdf(r_obs; rho_L) = a/2
    ConfidenceInterval ci = make_interval(lower, upper, MethodId::Exact, 1.0 - alpha);
    ci.clamped_lower |= cl;
    ci.clamped_upper |= cu;
    return ci;
}

}  // namespace rhoci
