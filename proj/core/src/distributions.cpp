#include "rhoci/distributions.hpp"

#include "rhoci/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace rhoci {

CovMatrix2 make_cov(double sigma1, double sigma2, double rho) {
    if (!(sigma1 > 0.0 && sigma2 > 0.0))
        throw std::domain_error("make_cov: sigmas must be positive");
    if (!(rho > -1.0 && rho < 1.0))
        throw std::domain_error("make_cov: rho must lie in (-1,1)");
    return {sigma1 * sigma1, rho * sigma1 * sigma2, sigma2 * sigma2};
}

CholeskyFactor2 cholesky2(const CovMatrix2& m) {
    if (!(m.s11 > 0.0))
        throw std::domain_error("cholesky2: matrix not positive definite");
    double l11 = std::sqrt(m.s11);
    double l21 = m.s12 / l11;
    double rest = m.s22 - l21 * l21;
    if (!(rest > 0.0))
        throw std::domain_error("cholesky2: matrix not positive definite");
    return {l11, l21, std::sqrt(rest)};
}

CovMatrix2 inverse2(const CovMatrix2& m) {
    double d = m.det();
    if (!(d > 0.0) || !(m.s11 > 0.0))
        throw degenerate_data("inverse2: matrix is singular");
    return {m.s22 / d, -m.s12 / d, m.s11 / d};
}

DataSet sample_bvnormal(RngStream& rng, std::pair<double, double> mu,
                        const CovMatrix2& sigma, int n) {
    if (n < 2) throw std::domain_error("sample_bvnormal: n must be >= 2");
    CholeskyFactor2 l = cholesky2(sigma);
    DataSet out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double z1 = rng.normal();
        double z2 = rng.normal();
        out.push_back({mu.first + l.l11 * z1, mu.second + l.l21 * z1 + l.l22 * z2});
    }
    return out;
}

DataSet sample_bvt(RngStream& rng, std::pair<double, double> mu,
                   const CovMatrix2& sigma, double nu, int n) {
    if (!(nu > 0.0)) throw std::domain_error("sample_bvt: nu must be positive");
    if (n < 2) throw std::domain_error("sample_bvt: n must be >= 2");
    CholeskyFactor2 l = cholesky2(sigma);
    DataSet out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double z1 = rng.normal();
        double z2 = rng.normal();
        double scale = std::sqrt(rng.chisq(nu) / nu);
        out.push_back({mu.first + l.l11 * z1 / scale,
                       mu.second + (l.l21 * z1 + l.l22 * z2) / scale});
    }
    return out;
}

DataSet sample_bvlognormal(RngStream& rng, std::pair<double, double> mu,
                           const CovMatrix2& sigma, int n) {
    DataSet out = sample_bvnormal(rng, mu, sigma, n);
    for (auto& row : out) {
        row.x1 = std::exp(row.x1);
        row.x2 = std::exp(row.x2);
    }
    return out;
}

CovMatrix2 sample_wishart2(RngStream& rng, int df, const CovMatrix2& scale) {
    if (df < 2) throw std::domain_error("sample_wishart2: df must be >= 2");
    CholeskyFactor2 l = cholesky2(scale);
    // Bartlett: W = (L C)(L C)^T with C = [[v,0],[z,w]].
    double v = std::sqrt(rng.chisq(df));
    double w = std::sqrt(rng.chisq(df - 1));
    double z = rng.normal();
    double m11 = l.l11 * v;
    double m21 = l.l21 * v + l.l22 * z;
    double m22 = l.l22 * w;
    return {m11 * m11, m11 * m21, m21 * m21 + m22 * m22};
}

}  // namespace rhoci
