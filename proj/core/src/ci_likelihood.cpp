#include "rhoci/ci_likelihood.hpp"

#include "rhoci/errors.hpp"
#include "rhoci/special.hpp"

#include <cmath>
#include <stdexcept>

namespace rhoci {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kEdge = 1.0 - 1e-9;

void check_rho0(double rho0) {
    if (!(rho0 > -1.0 && rho0 < 1.0))
        throw std::domain_error("likelihood: |rho0| must be < 1");
}

// Quadratic-form pieces sum_i (x_i - mu)(x_i - mu)' from the statistics.
struct QuadForm {
    double q11, q12, q22;
};

QuadForm quad_form(const ParamVector& t, const SuffStats& s) {
    double d1 = s.mean1 - t.mu1;
    double d2 = s.mean2 - t.mu2;
    return {s.n * (s.s1sq + d1 * d1), s.n * (s.s12 + d1 * d2), s.n * (s.s2sq + d2 * d2)};
}

double loglik_impl(const ParamVector& t, const QuadForm& q, int n) {
    double om = 1.0 - t.rho * t.rho;
    double quad = q.q11 / (t.sigma1 * t.sigma1) -
                  2.0 * t.rho * q.q12 / (t.sigma1 * t.sigma2) +
                  q.q22 / (t.sigma2 * t.sigma2);
    return -n * kLog2Pi - n * std::log(t.sigma1 * t.sigma2) - 0.5 * n * std::log(om) -
           0.5 * quad / om;
}

// Profile objective over u = (log sigma1, log sigma2) with mu at the sample
// means and rho fixed; returns the log-likelihood and its gradient in u.
struct ProfileEval {
    double value;
    double g1, g2;
};

ProfileEval profile_eval(const SuffStats& s, double rho0, double u1, double u2) {
    double s1 = std::exp(u1), s2 = std::exp(u2);
    double om = 1.0 - rho0 * rho0;
    double a = s.s1sq / (s1 * s1);
    double c = s.s2sq / (s2 * s2);
    double x = s.s12 / (s1 * s2);
    double n = s.n;
    ProfileEval e;
    e.value = -n * kLog2Pi - n * (u1 + u2) - 0.5 * n * std::log(om) -
              0.5 * n * (a - 2.0 * rho0 * x + c) / om;
    e.g1 = -n + n * (a - rho0 * x) / om;
    e.g2 = -n + n * (c - rho0 * x) / om;
    return e;
}

// Golden-section ascent along one coordinate; fallback when the quasi-Newton
// line search stalls.
double golden_coordinate(const SuffStats& s, double rho0, double u1, double u2,
                         bool first, double span) {
    const double gr = 0.6180339887498949;
    double lo = (first ? u1 : u2) - span;
    double hi = (first ? u1 : u2) + span;
    auto val = [&](double u) {
        return first ? profile_eval(s, rho0, u, u2).value
                     : profile_eval(s, rho0, u1, u).value;
    };
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = val(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = val(x1);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double loglik(const ParamVector& t, const SuffStats& s) {
    if (!(t.sigma1 > 0.0 && t.sigma2 > 0.0))
        throw std::domain_error("loglik: sigmas must be positive");
    check_rho0(t.rho);
    return loglik_impl(t, quad_form(t, s), s.n);
}

double loglik(const ParamVector& t, const DataSet& data) {
    if (!(t.sigma1 > 0.0 && t.sigma2 > 0.0))
        throw std::domain_error("loglik: sigmas must be positive");
    check_rho0(t.rho);
    if (data.size() < 3) throw std::domain_error("loglik: need n >= 3");
    QuadForm q{0.0, 0.0, 0.0};
    for (const auto& row : data) {
        double d1 = row.x1 - t.mu1;
        double d2 = row.x2 - t.mu2;
        q.q11 += d1 * d1;
        q.q12 += d1 * d2;
        q.q22 += d2 * d2;
    }
    return loglik_impl(t, q, static_cast<int>(data.size()));
}

ParamVector unconstrained_mle(const SuffStats& s) {
    return {s.mean1, s.mean2, std::sqrt(s.s1sq), std::sqrt(s.s2sq), s.r};
}

ParamVector constrained_mle(const SuffStats& s, double rho0) {
    check_rho0(rho0);
    double u1 = 0.5 * std::log(s.s1sq);
    double u2 = 0.5 * std::log(s.s2sq);
    // BFGS on the negated profile, inverse-Hessian approximation h.
    double h11 = 1.0, h12 = 0.0, h22 = 1.0;
    ProfileEval e = profile_eval(s, rho0, u1, u2);
    for (int it = 0; it < 500; ++it) {
        double gnorm = std::sqrt(e.g1 * e.g1 + e.g2 * e.g2);
        if (gnorm < 1e-8)
            return {s.mean1, s.mean2, std::exp(u1), std::exp(u2), rho0};
        // ascent direction h * g
        double d1 = h11 * e.g1 + h12 * e.g2;
        double d2 = h12 * e.g1 + h22 * e.g2;
        double slope = e.g1 * d1 + e.g2 * d2;
        if (slope <= 0.0) {  // reset to steepest ascent
            h11 = h22 = 1.0; h12 = 0.0;
            d1 = e.g1; d2 = e.g2;
            slope = e.g1 * d1 + e.g2 * d2;
        }
        double dnorm = std::sqrt(d1 * d1 + d2 * d2);
        double step = std::fmin(1.0, 10.0 / dnorm);
        ProfileEval en;
        bool accepted = false;
        for (int ls = 0; ls < 80; ++ls) {
            en = profile_eval(s, rho0, u1 + step * d1, u2 + step * d2);
            // Near the optimum the value differences drop below double
            // resolution; a clear gradient-norm drop also accepts the step.
            double en_gnorm = std::sqrt(en.g1 * en.g1 + en.g2 * en.g2);
            if (en.value >= e.value + 1e-4 * step * slope || en_gnorm <= 0.6 * gnorm) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            u1 = golden_coordinate(s, rho0, u1, u2, true, 5.0);
            u2 = golden_coordinate(s, rho0, u1, u2, false, 5.0);
            e = profile_eval(s, rho0, u1, u2);
            continue;
        }
        double s1v = step * d1, s2v = step * d2;
        double y1 = en.g1 - e.g1, y2 = en.g2 - e.g2;
        u1 += s1v;
        u2 += s2v;
        e = en;
        // BFGS update on the inverse Hessian of the negated objective
        // (gradient difference enters with flipped sign for ascent).
        double sy = -(s1v * y1 + s2v * y2);
        if (sy > 1e-12) {
            double hy1 = -(h11 * y1 + h12 * y2);
            double hy2 = -(h12 * y1 + h22 * y2);
            double yhy = -(y1 * hy1 + y2 * hy2);
            double c1 = (sy + yhy) / (sy * sy);
            h11 += c1 * s1v * s1v - (hy1 * s1v + s1v * hy1) / sy;
            h12 += c1 * s1v * s2v - (hy1 * s2v + s1v * hy2) / sy;
            h22 += c1 * s2v * s2v - (hy2 * s2v + s2v * hy2) / sy;
        }
    }
    throw numeric_error("constrained_mle: optimizer did not converge");
}

ParamVector constrained_mle(const DataSet& data, double rho0) {
    return constrained_mle(suff_stats(data), rho0);
}

namespace {

double det_sym(double m[5][5], int k) {
    // Gaussian elimination with partial pivoting on a k x k copy.
    double det = 1.0;
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int row = col + 1; row < k; ++row)
            if (std::fabs(m[row][col]) > std::fabs(m[piv][col])) piv = row;
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(m[piv][j], m[col][j]);
            det = -det;
        }
        if (m[col][col] == 0.0) return 0.0;
        det *= m[col][col];
        for (int row = col + 1; row < k; ++row) {
            double f = m[row][col] / m[col][col];
            for (int j = col; j < k; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return det;
}

ParamVector with_component(ParamVector t, int i, double v) {
    switch (i) {
        case 0: t.mu1 = v; break;
        case 1: t.mu2 = v; break;
        case 2: t.sigma1 = v; break;
        case 3: t.sigma2 = v; break;
        default: t.rho = v; break;
    }
    return t;
}

double component(const ParamVector& t, int i) {
    switch (i) {
        case 0: return t.mu1;
        case 1: return t.mu2;
        case 2: return t.sigma1;
        case 3: return t.sigma2;
        default: return t.rho;
    }
}

// Negative Hessian of the log-likelihood over the first k components of
// theta, central differences with per-component steps.
void neg_hessian(const SuffStats& s, const ParamVector& theta, int k, double out[5][5]) {
    double h[5];
    for (int i = 0; i < k; ++i) {
        h[i] = 1e-4 * std::fmax(1.0, std::fabs(component(theta, i)));
        // keep perturbed parameters inside their domains
        if (i == 2 || i == 3) h[i] = std::fmin(h[i], 0.5 * component(theta, i));
        if (i == 4) h[i] = std::fmin(h[i], 0.5 * (1.0 - std::fabs(theta.rho)));
    }
    double f0 = loglik(theta, s);
    for (int i = 0; i < k; ++i) {
        double fp = loglik(with_component(theta, i, component(theta, i) + h[i]), s);
        double fm = loglik(with_component(theta, i, component(theta, i) - h[i]), s);
        out[i][i] = -(fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (int j = i + 1; j < k; ++j) {
            ParamVector tpp = with_component(with_component(theta, i, component(theta, i) + h[i]),
                                             j, component(theta, j) + h[j]);
            ParamVector tpm = with_component(with_component(theta, i, component(theta, i) + h[i]),
                                             j, component(theta, j) - h[j]);
            ParamVector tmp = with_component(with_component(theta, i, component(theta, i) - h[i]),
                                             j, component(theta, j) + h[j]);
            ParamVector tmm = with_component(with_component(theta, i, component(theta, i) - h[i]),
                                             j, component(theta, j) - h[j]);
            double v = -(loglik(tpp, s) - loglik(tpm, s) - loglik(tmp, s) + loglik(tmm, s)) /
                       (4.0 * h[i] * h[j]);
            out[i][j] = out[j][i] = v;
        }
    }
}

double deviance(const SuffStats& s, double rho0, double* ll_hat_out) {
    ParamVector hat = unconstrained_mle(s);
    // |r| = 1 would put the MLE on the boundary.
    if (s.r_near_one) throw degenerate_data("signed_lr: |r| at boundary");
    double ll_hat = loglik(hat, s);
    double ll0 = loglik(constrained_mle(s, rho0), s);
    if (ll_hat_out) *ll_hat_out = ll_hat;
    return std::fmax(0.0, 2.0 * (ll_hat - ll0));
}

}  // namespace

ObservedInformation observed_information(const SuffStats& s, double rho0) {
    ObservedInformation info;
    double buf[5][5];
    neg_hessian(s, unconstrained_mle(s), 5, buf);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) info.full[i][j] = buf[i][j];
    neg_hessian(s, constrained_mle(s, rho0), 4, buf);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) info.nuisance[i][j] = buf[i][j];
    return info;
}

double signed_lr(const SuffStats& s, double rho0) {
    check_rho0(rho0);
    double dev = deviance(s, rho0, nullptr);
    double d = std::sqrt(dev);
    return s.r >= rho0 ? d : -d;
}

double signed_lr(const DataSet& data, double rho0) {
    return signed_lr(suff_stats(data), rho0);
}

namespace {

// D* with the full-information determinant precomputed once per data set.
double mslr_with_det5(const SuffStats& s, double rho0, double det5) {
    double d = signed_lr(s, rho0);
    if (std::fabs(d) < 1e-6)
        throw numeric_error("modified_signed_lr: rho0 too close to the MLE");
    double buf[5][5];
    neg_hessian(s, constrained_mle(s, rho0), 4, buf);
    double det4 = det_sym(buf, 4);
    double ratio = det5 / det4;
    if (!(ratio > 0.0))
        throw numeric_error("modified_signed_lr: non-positive information ratio");
    double q = (s.r - rho0) * std::sqrt(ratio);
    double dq = d / q;
    if (!(dq > 0.0))
        throw numeric_error("modified_signed_lr: D/Q not positive");
    return d - std::log(dq) / d;
}

double full_information_det(const SuffStats& s) {
    double buf[5][5];
    neg_hessian(s, unconstrained_mle(s), 5, buf);
    return det_sym(buf, 5);
}

}  // namespace

double modified_signed_lr(const SuffStats& s, double rho0) {
    check_rho0(rho0);
    return mslr_with_det5(s, rho0, full_information_det(s));
}

double modified_signed_lr(const DataSet& data, double rho0) {
    return modified_signed_lr(suff_stats(data), rho0);
}

ConfidenceInterval lr_ci(const SuffStats& s, double alpha, bool modified) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("lr_ci: alpha must lie in (0,1)");
    if (s.n < 3) throw method_not_applicable("lr_ci: needs n >= 3");
    MethodId id = modified ? MethodId::ModifiedSignedLR : MethodId::SignedLR;
    double level = 1.0 - alpha;
    if (s.r_near_one) return degenerate_interval(s.r, id, level);

    double z = special::std_normal_quantile(1.0 - alpha / 2.0);
    double det5 = modified ? full_information_det(s) : 0.0;
    auto stat = [&](double rho0) {
        return modified ? mslr_with_det5(s, rho0, det5) : signed_lr(s, rho0);
    };

    // The statistic decreases in rho0 through r. The D* singularity at the
    // MLE keeps the bracket 1e-3 away from r.
    const double gap = modified ? 1e-3 : 1e-9;
    // Solves stat(rho0) = target on [lo, hi]; stat(lo) > target > stat(hi)
    // must hold or the closest bracket end is returned (clamped marks the
    // outer end, where the acceptance region runs into the parameter bound).
    auto solve = [&](double target, double lo, double hi, bool outer_is_lo,
                     bool* clamped) {
        *clamped = false;
        if (stat(lo) < target) {
            *clamped = outer_is_lo;
            return lo;
        }
        if (stat(hi) > target) {
            *clamped = !outer_is_lo;
            return hi;
        }
        while (hi - lo > 1e-7) {
            double mid = 0.5 * (lo + hi);
            if (stat(mid) > target) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    bool cl = false, cu = false;
    double lower = -1.0, upper = 1.0;
    if (s.r - gap > -kEdge)
        lower = solve(z, -kEdge, s.r - gap, true, &cl);
    else
        cl = true;
    if (s.r + gap < kEdge)
        upper = solve(-z, s.r + gap, kEdge, false, &cu);
    else
        cu = true;
    if (cl) lower = -1.0;
    if (cu) upper = 1.0;

    ConfidenceInterval ci = make_interval(lower, upper, id, level);
    ci.clamped_lower |= cl;
    ci.clamped_upper |= cu;
    return ci;
}

ConfidenceInterval lr_ci(const DataSet& data, double alpha, bool modified) {
    return lr_ci(suff_stats(data), alpha, modified);
}

}  // namespace rhoci
