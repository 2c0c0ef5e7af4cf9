#ifndef RHOCI_CI_ANALYTIC_HPP
#define RHOCI_CI_ANALYTIC_HPP

#include "rhoci/interval.hpp"
#include "rhoci/summary.hpp"

namespace rhoci {

// Closed-form or root-solved deterministic intervals. All take the nominal
// alpha (so level = 1 - alpha) and clamp endpoints into [-1, 1].

// tanh(atanh r -/+ z_{a/2} / sqrt(n-3)); needs n >= 4.
ConfidenceInterval fisher_z_ci(double r, int n, double alpha);

// Inverts the variant'th modified z-transform by bracketed bisection; n >= 3.
ConfidenceInterval hotelling_ci(double r, int n, double alpha, int variant);

// Quadratic inversion of the normalized statistic in rho-tilde; n >= 4.
ConfidenceInterval ruben_ci(double r, int n, double alpha);

// Quadratic inversion of the t statistic carrying the variance-ratio factor b.
ConfidenceInterval muddapur_t_ci(const SuffStats& stats, double alpha);

// Closed form ((r-w)/(1-rw), (r+w)/(1+rw)); identical to the F-quantile form.
ConfidenceInterval jeyaratnam_ci(double r, int n, double alpha);

// Ratio interval in D+ and D- with F(n-1, n-1) quantiles.
ConfidenceInterval haddad_provost_ci(const SuffStats& stats, double alpha);

// Cornish-Fisher corrected z interval of the given order (1 or 2),
// root-solved with the correction polynomials evaluated at the candidate rho.
ConfidenceInterval withers_nadarajah_ci(double r, int n, double alpha, int order);

}  // namespace rhoci

#endif
