#ifndef RHOCI_DISTRIBUTIONS_HPP
#define RHOCI_DISTRIBUTIONS_HPP

#include "rhoci/dataset.hpp"
#include "rhoci/rng.hpp"

#include <utility>

namespace rhoci {

// 2x2 symmetric covariance matrix, three stored entries.
struct CovMatrix2 {
    double s11;
    double s12;
    double s22;

    double det() const { return s11 * s22 - s12 * s12; }
};

// Sigma built from marginal sigmas and correlation.
CovMatrix2 make_cov(double sigma1, double sigma2, double rho);

// Lower-triangular factor with L * L^T equal to the source matrix.
struct CholeskyFactor2 {
    double l11;
    double l21;
    double l22;
};

// Throws std::domain_error unless the matrix is positive definite.
CholeskyFactor2 cholesky2(const CovMatrix2& m);

CovMatrix2 inverse2(const CovMatrix2& m);  // throws degenerate_data if singular

// Bivariate normal rows mu + L z.
DataSet sample_bvnormal(RngStream& rng, std::pair<double, double> mu,
                        const CovMatrix2& sigma, int n);

// Bivariate t: one chi-square divisor shared by both coordinates of a row,
// so the population correlation equals the rho of sigma (nu > 2).
DataSet sample_bvt(RngStream& rng, std::pair<double, double> mu,
                   const CovMatrix2& sigma, double nu, int n);

// Componentwise exp of a bivariate normal draw.
DataSet sample_bvlognormal(RngStream& rng, std::pair<double, double> mu,
                           const CovMatrix2& sigma, int n);

// Wishart W(df, scale) by the Bartlett construction, df >= 2.
CovMatrix2 sample_wishart2(RngStream& rng, int df, const CovMatrix2& scale);

}  // namespace rhoci

#endif
