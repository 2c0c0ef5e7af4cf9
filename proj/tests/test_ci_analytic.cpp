#include "doctest.h"

#include "rhoci/ci_analytic.hpp"
#include "rhoci/errors.hpp"
#include "rhoci/methods.hpp"
#include "rhoci/rng.hpp"
#include "rhoci/special.hpp"
#include "support.hpp"

#include <cmath>

using namespace rhoci;
using special::f_quantile;
using special::std_normal_quantile;
using special::t_quantile;

namespace {

// The (r, n, alpha)-only methods, for equivariance/nesting sweeps.
ConfidenceInterval by_tag(MethodId id, double r, int n, double alpha) {
    switch (id) {
        case MethodId::FisherZ: return fisher_z_ci(r, n, alpha);
        case MethodId::Hotelling1: return hotelling_ci(r, n, alpha, 1);
        case MethodId::Hotelling2: return hotelling_ci(r, n, alpha, 2);
        case MethodId::Hotelling3: return hotelling_ci(r, n, alpha, 3);
        case MethodId::Hotelling4: return hotelling_ci(r, n, alpha, 4);
        case MethodId::Ruben: return ruben_ci(r, n, alpha);
        case MethodId::Muddapur2: return jeyaratnam_ci(r, n, alpha);
        case MethodId::WN1: return withers_nadarajah_ci(r, n, alpha, 1);
        case MethodId::WN2: return withers_nadarajah_ci(r, n, alpha, 2);
        default: throw std::logic_error("not an (r,n)-only method");
    }
}

const MethodId kRnMethods[] = {MethodId::FisherZ,    MethodId::Hotelling1,
                               MethodId::Hotelling2, MethodId::Hotelling3,
                               MethodId::Hotelling4, MethodId::Ruben,
                               MethodId::Muddapur2,  MethodId::WN1,
                               MethodId::WN2};

double hotelling_zeta(double rho, int n, int variant) {
    double z = std::atanh(rho);
    double m = n - 1.0;
    switch (variant) {
        case 1: return z - (7.0 * z + rho) / (8.0 * m);
        case 2:
            return z - (7.0 * z + rho) / (8.0 * m) -
                   (119.0 * z + 57.0 * rho + 3.0 * rho * rho * rho) / (384.0 * m * m);
        case 3: return z - (3.0 * z + rho) / (4.0 * m);
        default:
            return z - (3.0 * z + rho) / (4.0 * m) -
                   (23.0 * z + 33.0 * rho - 5.0 * rho * rho * rho) / (96.0 * m * m);
    }
}

}  // namespace

TEST_CASE("fisher z frozen values") {
    // grade 4 / grade 8 columns and the symmetric-at-zero case
    ConfidenceInterval ci = fisher_z_ci(0.9755, 11, 0.05);
    CHECK(ci.lower == doctest::Approx(0.905).epsilon(0.0011));
    CHECK(ci.upper == doctest::Approx(0.994).epsilon(0.0011));

    ConfidenceInterval c8 = fisher_z_ci(0.9738, 11, 0.05);
    CHECK(c8.lower == doctest::Approx(0.899).epsilon(0.0011));
    CHECK(c8.upper == doctest::Approx(0.993).epsilon(0.0011));

    ConfidenceInterval c0 = fisher_z_ci(0.0, 12, 0.05);
    double c = std::tanh(std_normal_quantile(0.975) / 3.0);
    CHECK(c0.upper == doctest::Approx(c).epsilon(1e-9));
    CHECK(c0.lower == doctest::Approx(-c).epsilon(1e-9));
    CHECK(c0.upper == doctest::Approx(0.57389).epsilon(1e-5));

    ConfidenceInterval e1 = fisher_z_ci(-0.7786, 16, 0.05);
    CHECK(e1.lower == doctest::Approx(-0.919).epsilon(0.0011));
    CHECK(e1.upper == doctest::Approx(-0.461).epsilon(0.0011));

    CHECK_THROWS_AS(fisher_z_ci(0.5, 3, 0.05), method_not_applicable);
}

TEST_CASE("hotelling intervals against grid scans") {
    ConfidenceInterval z3 = hotelling_ci(0.9755, 11, 0.05, 3);
    CHECK(z3.lower == doctest::Approx(0.909).epsilon(0.0011));
    CHECK(z3.upper == doctest::Approx(0.994).epsilon(0.0011));

    // symmetric at r = 0 for every variant
    for (int variant = 1; variant <= 4; ++variant) {
        ConfidenceInterval ci = hotelling_ci(0.0, 8, 0.05, variant);
        CHECK(ci.lower == doctest::Approx(-ci.upper).epsilon(1e-9));
    }

    // grid-scan oracle on the defining equations
    for (int variant : {1, 2, 4}) {
        for (double r : {-0.4, 0.3, 0.9}) {
            int n = 12;
            double zi = hotelling_zeta(0.0, n, variant);  // placeholder init
            double z = std::atanh(r);
            double m = n - 1.0;
            switch (variant) {
                case 1: zi = z - (7.0 * z + r) / (8.0 * m); break;
                case 2:
                    zi = z - (7.0 * z + r) / (8.0 * m) -
                         (119.0 * z + 57.0 * r + 3.0 * r * r * r) / (384.0 * m * m);
                    break;
                default:
                    zi = z - (3.0 * z + r) / (4.0 * m) -
                         (23.0 * z + 33.0 * r - 5.0 * r * r * r) / (96.0 * m * m);
            }
            double h = std_normal_quantile(0.975) / std::sqrt(m);
            ConfidenceInterval ci = hotelling_ci(r, n, 0.05, variant);
            auto zeta = [&](double rho) { return hotelling_zeta(rho, n, variant); };
            CHECK(ci.lower ==
                  doctest::Approx(oracle::grid_scan_root(zeta, zi - h, 100000))
                      .epsilon(2e-5));
            CHECK(ci.upper ==
                  doctest::Approx(oracle::grid_scan_root(zeta, zi + h, 100000))
                      .epsilon(2e-5));
        }
    }

    CHECK_THROWS_AS(hotelling_ci(0.5, 10, 0.05, 5), std::domain_error);
}

TEST_CASE("ruben interval") {
    ConfidenceInterval ci = ruben_ci(0.9755, 11, 0.05);
    CHECK(ci.lower == doctest::Approx(0.888).epsilon(0.0011));
    CHECK(ci.upper == doctest::Approx(0.993).epsilon(0.0011));

    ConfidenceInterval c0 = ruben_ci(0.0, 9, 0.05);
    CHECK(c0.lower == doctest::Approx(-c0.upper).epsilon(1e-9));

    // |Z_hr| = q grid scan
    for (double r : {-0.6, 0.2, 0.8}) {
        int n = 10;
        double rt = r / std::sqrt(1.0 - r * r);
        double q = std_normal_quantile(0.975);
        auto zhr = [&](double rho) {
            double pt = rho / std::sqrt(1.0 - rho * rho);
            return (std::sqrt((2.0 * n - 5.0) / 2.0) * rt -
                    std::sqrt((2.0 * n - 3.0) / 2.0) * pt) /
                   std::sqrt(1.0 + 0.5 * (rt * rt + pt * pt));
        };
        ConfidenceInterval ci2 = ruben_ci(r, n, 0.05);
        // zhr decreases in rho: lower endpoint solves zhr = +q
        CHECK(ci2.lower ==
              doctest::Approx(oracle::grid_scan_root(zhr, q, 100000)).epsilon(2e-5));
        CHECK(ci2.upper ==
              doctest::Approx(oracle::grid_scan_root(zhr, -q, 100000)).epsilon(2e-5));
    }

    CHECK_THROWS_AS(ruben_ci(0.5, 3, 0.05), method_not_applicable);
    // n = 4 at alpha = 0.01 inverts the acceptance region
    CHECK_THROWS_AS(ruben_ci(0.5, 4, 0.01), method_failure);
}

TEST_CASE("muddapur t interval") {
    // b = 1: equal-variance synthetic stats; against a grid scan of the
    // Samiuddin statistic
    SuffStats s = stats_from_r(0.9755, 11);
    ConfidenceInterval ci = muddapur_t_ci(s, 0.05);
    double t = t_quantile(0.975, 9);
    auto stat = [&](double rho) {
        return std::sqrt(9.0) * (s.r - rho) /
               std::sqrt((1.0 - rho * rho) * (1.0 - s.r * s.r));
    };
    CHECK(ci.lower ==
          doctest::Approx(oracle::grid_scan_root(stat, t, 100000)).epsilon(2e-5));
    CHECK(ci.upper ==
          doctest::Approx(oracle::grid_scan_root(stat, -t, 100000)).epsilon(2e-5));

    // r = 0, b = 1 is symmetric
    ConfidenceInterval c0 = muddapur_t_ci(stats_from_r(0.0, 9), 0.05);
    CHECK(c0.lower == doctest::Approx(-c0.upper).epsilon(1e-9));

    // Vieta: root mean equals the quadratic midpoint, b large
    for (double b : {1.0, 2.0, 10.0, 50.0}) {
        SuffStats sb = stats_from_r(0.4, 15);
        sb.b = b;
        double tq = t_quantile(0.975, 13);
        ConfidenceInterval cib = muddapur_t_ci(sb, 0.05);
        double mid = 13.0 * 0.4 * b / (13.0 * b * b + tq * tq * (1.0 - 0.16));
        bool unclamped = !cib.clamped_lower && !cib.clamped_upper;
        if (unclamped)
            CHECK(0.5 * (cib.lower + cib.upper) == doctest::Approx(mid).epsilon(1e-9));
    }
}

TEST_CASE("jeyaratnam equals the muddapur F form") {
    ConfidenceInterval ci = jeyaratnam_ci(0.9755, 11, 0.05);
    CHECK(ci.lower == doctest::Approx(0.905).epsilon(0.0011));
    CHECK(ci.upper == doctest::Approx(0.993).epsilon(0.0011));

    ConfidenceInterval c0 = jeyaratnam_ci(0.0, 7, 0.05);
    double t = t_quantile(0.975, 5);
    double u = t / std::sqrt(5.0);
    double w = u / std::sqrt(1.0 + u * u);
    CHECK(c0.upper == doctest::Approx(w).epsilon(1e-12));
    CHECK(c0.lower == doctest::Approx(-w).epsilon(1e-12));

    // identity with the F-quantile display over random (r, n, alpha)
    RngStream rng(101, 0);
    for (int it = 0; it < 100; ++it) {
        double r = -0.99 + 1.98 * rng.uniform();
        int n = 3 + static_cast<int>(rng.uniform() * 40);
        double alpha = 0.01 + 0.2 * rng.uniform();
        double fq = f_quantile(1.0 - alpha / 2.0, n - 2, n - 2);  // upper alpha/2
        double lo_f = ((1.0 + fq) * r + (1.0 - fq)) / ((1.0 + fq) + (1.0 - fq) * r);
        double hi_f = ((1.0 + fq) * r - (1.0 - fq)) / ((1.0 + fq) - (1.0 - fq) * r);
        ConfidenceInterval cj = jeyaratnam_ci(r, n, alpha);
        CHECK(cj.lower == doctest::Approx(lo_f).epsilon(1e-10));
        CHECK(cj.upper == doctest::Approx(hi_f).epsilon(1e-10));
    }
}

TEST_CASE("haddad-provost interval") {
    // r = 0 data: symmetric
    SuffStats s0 = suff_stats({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
    ConfidenceInterval c0 = haddad_provost_ci(s0, 0.05);
    CHECK(c0.lower == doctest::Approx(-c0.upper).epsilon(1e-9));

    // reduction to the (1+r)/(1-r) closed form through the D identities
    RngStream rng(102, 0);
    for (int it = 0; it < 50; ++it) {
        int n = 3 + static_cast<int>(rng.uniform() * 20);
        DataSet d;
        for (int i = 0; i < n; ++i) d.push_back({rng.normal(), rng.normal() * 3.0});
        SuffStats s = suff_stats(d);
        double fh = f_quantile(0.975, n - 1, n - 1);
        double fl = f_quantile(0.025, n - 1, n - 1);
        double lo = ((1.0 + s.r) - (1.0 - s.r) * fh) / ((1.0 + s.r) + (1.0 - s.r) * fh);
        double hi = ((1.0 + s.r) - (1.0 - s.r) * fl) / ((1.0 + s.r) + (1.0 - s.r) * fl);
        ConfidenceInterval ci = haddad_provost_ci(s, 0.05);
        CHECK(ci.lower == doctest::Approx(lo).epsilon(1e-10));
        CHECK(ci.upper == doctest::Approx(hi).epsilon(1e-10));
    }
}

TEST_CASE("withers-nadarajah intervals") {
    // order 1, r = 0: defining equation holds at the returned endpoints and
    // the interval is symmetric, close to +-tanh(q/sqrt(n))
    int n = 25;
    ConfidenceInterval ci = withers_nadarajah_ci(0.0, n, 0.05, 1);
    CHECK(ci.lower == doctest::Approx(-ci.upper).epsilon(1e-9));
    double approx = std::tanh(std_normal_quantile(0.975) / std::sqrt(n));
    CHECK(ci.upper == doctest::Approx(approx).epsilon(0.05));

    auto wn_h = [&](double rho, double theta_hat, int order, double x, int nn) {
        double g1 = 0.5 * rho + rho * rho * rho * (x * x - 1.0) / 6.0;
        double r2 = rho * rho, r6 = r2 * r2 * r2;
        double g2 = x * x * x / 12.0 + x / 4.0 - r2 * x / 4.0 -
                    r6 * (2.0 * x * x * x - 5.0 * x) / 36.0;
        double y = x + g1 / std::sqrt(static_cast<double>(nn));
        if (order == 2) y += g2 / nn;
        return theta_hat - std::atanh(rho) - y / std::sqrt(static_cast<double>(nn));
    };
    // residual at the root and grid-scan agreement
    for (int order : {1, 2}) {
        for (double r : {-0.5, 0.2, 0.7}) {
            ConfidenceInterval c2 = withers_nadarajah_ci(r, 15, 0.05, order);
            double th = std::atanh(r);
            double xl = std_normal_quantile(0.975);
            double xu = std_normal_quantile(0.025);
            CHECK(wn_h(c2.lower, th, order, xl, 15) == doctest::Approx(0.0).epsilon(1e-8));
            CHECK(wn_h(c2.upper, th, order, xu, 15) == doctest::Approx(0.0).epsilon(1e-8));
            auto gl = [&](double rho) { return -wn_h(rho, th, order, xl, 15); };
            auto gu = [&](double rho) { return -wn_h(rho, th, order, xu, 15); };
            CHECK(c2.lower ==
                  doctest::Approx(oracle::grid_scan_root(gl, 0.0, 100000)).epsilon(2e-5));
            CHECK(c2.upper ==
                  doctest::Approx(oracle::grid_scan_root(gu, 0.0, 100000)).epsilon(2e-5));
        }
    }
}

TEST_CASE("sign equivariance and alpha nesting for the (r,n) methods") {
    RngStream rng(103, 0);
    for (int it = 0; it < 40; ++it) {
        double r = -0.97 + 1.94 * rng.uniform();
        int n = 5 + static_cast<int>(rng.uniform() * 30);
        for (MethodId id : kRnMethods) {
            ConfidenceInterval plus = by_tag(id, r, n, 0.05);
            ConfidenceInterval minus = by_tag(id, -r, n, 0.05);
            CHECK(minus.lower == doctest::Approx(-plus.upper).epsilon(1e-9));
            CHECK(minus.upper == doctest::Approx(-plus.lower).epsilon(1e-9));

            ConfidenceInterval c90 = by_tag(id, r, n, 0.10);
            ConfidenceInterval c99 = by_tag(id, r, n, 0.01);
            CHECK(c99.lower <= plus.lower + 1e-12);
            CHECK(plus.lower <= c90.lower + 1e-12);
            CHECK(c90.upper <= plus.upper + 1e-12);
            CHECK(plus.upper <= c99.upper + 1e-12);

            CHECK(plus.lower >= -1.0);
            CHECK(plus.upper <= 1.0);
            CHECK(plus.lower <= plus.upper);
        }
    }
}

TEST_CASE("degenerate |r| = 1 inputs collapse with clamp flags") {
    for (MethodId id : {MethodId::FisherZ, MethodId::Ruben, MethodId::WN1}) {
        ConfidenceInterval ci = by_tag(id, 1.0 - 1e-13, 12, 0.05);
        CHECK(ci.lower == ci.upper);
        CHECK(ci.clamped_lower);
        CHECK(ci.clamped_upper);
    }
}
