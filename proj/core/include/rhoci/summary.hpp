#ifndef RHOCI_SUMMARY_HPP
#define RHOCI_SUMMARY_HPP

#include "rhoci/dataset.hpp"

namespace rhoci {

// Every sufficient statistic the interval methods need, from one validated
// pass over a data set. Variances and covariance use the MLE divisor n.
struct SuffStats {
    int n = 0;
    double mean1 = 0.0, mean2 = 0.0;
    double s1sq = 0.0, s2sq = 0.0, s12 = 0.0;
    double r = 0.0;       // sample correlation, clamped into [-1, 1]
    double b = 1.0;       // (s1sq + s2sq) / sqrt(4 s1sq s2sq), >= 1
    double dplus = 0.0;   // sum of squared standardized sums
    double dminus = 0.0;  // sum of squared standardized differences
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;  // scatter matrix a = n S
    bool r_near_one = false;                 // |r| >= 1 - 1e-12 before clamping
};

// Throws degenerate_data on zero variance, std::domain_error for n < 2.
SuffStats suff_stats(const DataSet& data);

struct TransformedCorrelation {
    double z;       // atanh(r)
    double rtilde;  // r / sqrt(1 - r^2)
};

// Throws singular_transform at |r| = 1.
TransformedCorrelation transform(double r);

}  // namespace rhoci

#endif
