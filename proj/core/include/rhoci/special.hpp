#ifndef RHOCI_SPECIAL_HPP
#define RHOCI_SPECIAL_HPP

// Scalar special functions and distribution functions/quantiles.
// Quantiles invert the corresponding CDF with a bisection-safeguarded
// Newton iteration; accuracy is far inside the documented 1e-8 contract.

namespace rhoci::special {

double normal_pdf(double x);
double normal_cdf(double x);

// Lower-tail standard normal quantile: Phi(result) = p, 0 < p < 1.
double std_normal_quantile(double p);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double reg_inc_beta(double x, double a, double b);

// Regularized lower incomplete gamma P(a, x).
double reg_inc_gamma_lower(double a, double x);

double t_pdf(double x, int df);
double t_cdf(double x, int df);
// Lower-tail quantile of Student's t with df >= 1.
double t_quantile(double p, int df);

double f_cdf(double x, int df1, int df2);
// Lower-tail quantile of the F distribution with df1, df2 >= 1.
double f_quantile(double p, int df1, int df2);

double chisq_cdf(double x, double df);

// Gauss hypergeometric 2F1(aa, bb; cc; x) by direct power series, x in [0, 1).
// Terms are added until the relative term falls below 1e-14; throws
// rhoci::series_divergence (carrying the partial sum) after 10,000 terms.
double gauss_2f1(double aa, double bb, double cc, double x);

}  // namespace rhoci::special

#endif
