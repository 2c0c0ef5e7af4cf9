#ifndef RHOCI_CI_LIKELIHOOD_HPP
#define RHOCI_CI_LIKELIHOOD_HPP

#include "rhoci/dataset.hpp"
#include "rhoci/interval.hpp"
#include "rhoci/summary.hpp"

#include <array>

namespace rhoci {

struct ParamVector {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double rho = 0.0;
};

// Bivariate normal log-likelihood, summed over rows.
double loglik(const ParamVector& theta, const DataSet& data);
// Same value through the sufficient statistics (the likelihood depends on the
// data only through them); used on the optimizer hot path.
double loglik(const ParamVector& theta, const SuffStats& stats);

// Unconstrained MLE (closed form): means, sqrt of MLE variances, r.
ParamVector unconstrained_mle(const SuffStats& stats);

// MLE under the constraint rho = rho0. The means are analytic; the sigmas
// come from a quasi-Newton ascent in (log sigma1, log sigma2).
ParamVector constrained_mle(const SuffStats& stats, double rho0);
ParamVector constrained_mle(const DataSet& data, double rho0);

// Negative Hessians of the log-likelihood by central finite differences:
// the full 5x5 at theta_hat and the 4x4 nuisance block at theta_rho0.
struct ObservedInformation {
    std::array<std::array<double, 5>, 5> full{};
    std::array<std::array<double, 4>, 4> nuisance{};
};
ObservedInformation observed_information(const SuffStats& stats, double rho0);

// Signed log-likelihood ratio D(rho0); zero at rho0 = r.
double signed_lr(const SuffStats& stats, double rho0);
double signed_lr(const DataSet& data, double rho0);

// Barndorff-Nielsen modification D*(rho0). Throws numeric_error within
// |D| < 1e-6 of the MLE and on a non-positive information determinant ratio.
double modified_signed_lr(const SuffStats& stats, double rho0);
double modified_signed_lr(const DataSet& data, double rho0);

// Interval {rho: |D| < z} or {rho: |D*| < z}, endpoints by bisection.
ConfidenceInterval lr_ci(const SuffStats& stats, double alpha, bool modified);
ConfidenceInterval lr_ci(const DataSet& data, double alpha, bool modified);

}  // namespace rhoci

#endif
