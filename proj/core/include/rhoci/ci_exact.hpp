#ifndef RHOCI_CI_EXACT_HPP
#define RHOCI_CI_EXACT_HPP

#include "rhoci/interval.hpp"

namespace rhoci {

struct ExactDensityParams {
    int n;       // sample size, >= 4
    double rho;  // population correlation, |rho| < 1
};

// Density of the sample correlation coefficient at r for the given (n, rho),
// evaluated with a log-space prefactor and a hypergeometric series.
double exact_density(double r, const ExactDensityParams& p);

// P(R <= r) by adaptive quadrature of the density (absolute tolerance 1e-8),
// integrated in u = atanh(r) coordinates to tame the endpoints.
double exact_cdf(double r, const ExactDensityParams& p);

// Equal-tail interval: the endpoints solve the alpha/2 tail equations in rho
// by bisection (tolerance 1e-7). Needs n >= 4.
ConfidenceInterval exact_ci(double r_obs, int n, double alpha);

}  // namespace rhoci

#endif
