#include "rhoci/ci_analytic.hpp"

#include "rhoci/errors.hpp"
#include "rhoci/special.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace rhoci {

namespace {

using special::f_quantile;
using special::std_normal_quantile;
using special::t_quantile;

constexpr double kRhoEdge = 1.0 - 1e-10;
constexpr double kNearOne = 1.0 - 1e-12;

bool near_one(double r) { return std::fabs(r) >= kNearOne; }

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0,1)");
}

// Hotelling's modified transforms. The printed second-order terms carry
// rho^3 / R^3 (the cubic keeps every transform odd, which the even power
// would break).
double hotelling_transform(double z, double rho, int n, int variant) {
    double m = n - 1.0;
    switch (variant) {
        case 1:
            return z - (7.0 * z + rho) / (8.0 * m);
        case 2:
            return z - (7.0 * z + rho) / (8.0 * m) -
                   (119.0 * z + 57.0 * rho + 3.0 * rho * rho * rho) / (384.0 * m * m);
        case 3:
            return z - (3.0 * z + rho) / (4.0 * m);
        case 4:
            return z - (3.0 * z + rho) / (4.0 * m) -
                   (23.0 * z + 33.0 * rho - 5.0 * rho * rho * rho) / (96.0 * m * m);
        default:
            throw std::domain_error("hotelling_ci: variant must be 1..4");
    }
}

double hotelling_zeta(double rho, int n, int variant) {
    return hotelling_transform(std::atanh(rho), rho, n, variant);
}

// Withers-Nadarajah correction polynomials.
double wn_g1(double x, double rho) {
    return 0.5 * rho + rho * rho * rho * (x * x - 1.0) / 6.0;
}

double wn_g2(double x, double rho) {
    double r2 = rho * rho;
    double r6 = r2 * r2 * r2;
    return x * x * x / 12.0 + x / 4.0 - r2 * x / 4.0 -
           r6 * (2.0 * x * x * x - 5.0 * x) / 36.0;
}

// Defining function whose root in rho is a WN endpoint; strictly decreasing.
double wn_h(double rho, double theta_hat, int n, double x, int order) {
    double sqn = std::sqrt(static_cast<double>(n));
    double y = x + wn_g1(x, rho) / sqn;
    if (order >= 2) y += wn_g2(x, rho) / n;
    return theta_hat - std::atanh(rho) - y / sqn;
}

// One-time sanity check that the inverted transforms are monotone in rho
// over the working grid, so the bisection targets are well posed.
void monotonicity_self_test() {
    const int ns[] = {3, 4, 5, 10, 25, 50, 100};
    for (int n : ns) {
        for (int variant = 1; variant <= 4; ++variant) {
            double prev = hotelling_zeta(-0.999, n, variant);
            for (int i = 1; i <= 200; ++i) {
                double rho = -0.999 + 1.998 * i / 200.0;
                double cur = hotelling_zeta(rho, n, variant);
                if (!(cur > prev))
                    throw std::logic_error("hotelling transform not monotone");
                prev = cur;
            }
        }
        for (double alpha : {0.10, 0.05, 0.01}) {
            for (double x : {std_normal_quantile(1.0 - alpha / 2.0),
                             std_normal_quantile(alpha / 2.0)}) {
                for (int order : {1, 2}) {
                    double prev = wn_h(-0.999, 0.0, n, x, order);
                    for (int i = 1; i <= 200; ++i) {
                        double rho = -0.999 + 1.998 * i / 200.0;
                        double cur = wn_h(rho, 0.0, n, x, order);
                        if (!(cur < prev))
                            throw std::logic_error("wn defining function not monotone");
                        prev = cur;
                    }
                }
            }
        }
    }
}

void ensure_self_test() {
    static std::once_flag flag;
    std::call_once(flag, monotonicity_self_test);
}

// Bisection for f(rho) = 0 on [lo, hi]; f must be monotone. Returns the
// midpoint once the bracket is below tol. Caller checks the bracket signs.
template <typename F>
double bisect(F f, double lo, double hi, double flo, double tol) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Solves an increasing g(rho) = target; clamps outside the bracket range.
template <typename G>
double solve_increasing(G g, double target, bool* clamped) {
    *clamped = false;
    double lo = -kRhoEdge, hi = kRhoEdge;
    double glo = g(lo) - target;
    double ghi = g(hi) - target;
    if (glo >= 0.0) {
        *clamped = true;
        return -1.0;
    }
    if (ghi <= 0.0) {
        *clamped = true;
        return 1.0;
    }
    return bisect([&](double x) { return g(x) - target; }, lo, hi, glo, 1e-10);
}

}  // namespace

ConfidenceInterval fisher_z_ci(double r, int n, double alpha) {
    check_alpha(alpha);
    if (n <= 3)
        throw method_not_applicable("fisher_z_ci: needs n >= 4");
    if (near_one(r)) return degenerate_interval(r, MethodId::FisherZ, 1.0 - alpha);
    double z = std::atanh(r);
    double h = std_normal_quantile(1.0 - alpha / 2.0) / std::sqrt(n - 3.0);
    return make_interval(std::tanh(z - h), std::tanh(z + h), MethodId::FisherZ,
                         1.0 - alpha);
}

ConfidenceInterval hotelling_ci(double r, int n, double alpha, int variant) {
    check_alpha(alpha);
    if (variant < 1 || variant > 4)
        throw std::domain_error("hotelling_ci: variant must be 1..4");
    if (n < 3) throw method_not_applicable("hotelling_ci: needs n >= 3");
    MethodId id = static_cast<MethodId>(static_cast<int>(MethodId::Hotelling1) + variant - 1);
    if (near_one(r)) return degenerate_interval(r, id, 1.0 - alpha);
    ensure_self_test();

    double zi = hotelling_transform(std::atanh(r), r, n, variant);
    double h = std_normal_quantile(1.0 - alpha / 2.0) / std::sqrt(n - 1.0);
    auto zeta = [&](double rho) { return hotelling_zeta(rho, n, variant); };
    bool cl = false, cu = false;
    double lo = solve_increasing(zeta, zi - h, &cl);
    double hi = solve_increasing(zeta, zi + h, &cu);
    ConfidenceInterval ci = make_interval(lo, hi, id, 1.0 - alpha);
    ci.clamped_lower |= cl;
    ci.clamped_upper |= cu;
    return ci;
}

ConfidenceInterval ruben_ci(double r, int n, double alpha) {
    check_alpha(alpha);
    if (n <= 3) throw method_not_applicable("ruben_ci: needs n >= 4");
    if (near_one(r)) return degenerate_interval(r, MethodId::Ruben, 1.0 - alpha);
    double rt = r / std::sqrt((1.0 - r) * (1.0 + r));
    double v = std::sqrt((2.0 * n - 5.0) / 2.0) * rt;
    double k = std::sqrt((2.0 * n - 3.0) / 2.0);
    double q = std_normal_quantile(1.0 - alpha / 2.0);
    double qa = k * k - 0.5 * q * q;
    if (!(qa > 0.0))
        throw method_failure("ruben_ci: acceptance region is not an interval");
    double qb = -2.0 * v * k;
    double qc = v * v - q * q - 0.5 * q * q * rt * rt;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0)
        throw method_failure("ruben_ci: negative discriminant");
    double sq = std::sqrt(disc);
    double t1 = (-qb - sq) / (2.0 * qa);
    double t2 = (-qb + sq) / (2.0 * qa);
    auto back = [](double t) { return t / std::sqrt(1.0 + t * t); };
    return make_interval(back(t1), back(t2), MethodId::Ruben, 1.0 - alpha);
}

ConfidenceInterval muddapur_t_ci(const SuffStats& stats, double alpha) {
    check_alpha(alpha);
    int n = stats.n;
    if (n < 3) throw method_not_applicable("muddapur_t_ci: needs n >= 3");
    double r = stats.r, b = stats.b;
    double t = t_quantile(1.0 - alpha / 2.0, n - 2);
    double t2s = t * t * (1.0 - r * r);
    double qa = (n - 2.0) * b * b + t2s;
    double qb = -2.0 * (n - 2.0) * r * b;
    double qc = (n - 2.0) * r * r - t2s;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0)
        throw method_failure("muddapur_t_ci: negative discriminant");
    double sq = std::sqrt(disc);
    return make_interval((-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa),
                         MethodId::Muddapur1, 1.0 - alpha);
}

ConfidenceInterval jeyaratnam_ci(double r, int n, double alpha) {
    check_alpha(alpha);
    if (n < 3) throw method_not_applicable("jeyaratnam_ci: needs n >= 3");
    double t = t_quantile(1.0 - alpha / 2.0, n - 2);
    double u = t / std::sqrt(n - 2.0);
    double w = u / std::sqrt(1.0 + u * u);
    return make_interval((r - w) / (1.0 - r * w), (r + w) / (1.0 + r * w),
                         MethodId::Muddapur2, 1.0 - alpha);
}

ConfidenceInterval haddad_provost_ci(const SuffStats& stats, double alpha) {
    check_alpha(alpha);
    int n = stats.n;
    if (n < 3) throw method_not_applicable("haddad_provost_ci: needs n >= 3");
    // Upper alpha/2 and upper 1-alpha/2 quantiles of F(n-1, n-1).
    double f_hi = f_quantile(1.0 - alpha / 2.0, n - 1, n - 1);
    double f_lo = f_quantile(alpha / 2.0, n - 1, n - 1);
    double dp = stats.dplus, dm = stats.dminus;
    double e1 = (dp - dm * f_hi) / (dp + dm * f_hi);
    double e2 = (dp - dm * f_lo) / (dp + dm * f_lo);
    return make_interval(e1, e2, MethodId::HaddadProvost, 1.0 - alpha);
}

ConfidenceInterval withers_nadarajah_ci(double r, int n, double alpha, int order) {
    check_alpha(alpha);
    if (order != 1 && order != 2)
        throw std::domain_error("withers_nadarajah_ci: order must be 1 or 2");
    if (n < 3) throw method_not_applicable("withers_nadarajah_ci: needs n >= 3");
    MethodId id = order == 1 ? MethodId::WN1 : MethodId::WN2;
    if (near_one(r)) return degenerate_interval(r, id, 1.0 - alpha);
    ensure_self_test();

    double theta = std::atanh(r);
    auto solve = [&](double p, bool* clamped) {
        double x = std_normal_quantile(p);
        // h is decreasing in rho, so negate to reuse the increasing solver.
        auto g = [&](double rho) { return -wn_h(rho, theta, n, x, order); };
        return solve_increasing(g, 0.0, clamped);
    };
    bool cl = false, cu = false;
    double lo = solve(1.0 - alpha / 2.0, &cl);
    double hi = solve(alpha / 2.0, &cu);
    ConfidenceInterval ci = make_interval(lo, hi, id, 1.0 - alpha);
    ci.clamped_lower |= cl;
    ci.clamped_upper |= cu;
    return ci;
}

}  // namespace rhoci
