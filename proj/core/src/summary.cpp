#include "rhoci/summary.hpp"

#include "rhoci/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace rhoci {

SuffStats suff_stats(const DataSet& data) {
    const int n = static_cast<int>(data.size());
    if (n < 2) throw std::domain_error("suff_stats: need n >= 2");
    for (const auto& row : data)
        if (!std::isfinite(row.x1) || !std::isfinite(row.x2))
            throw std::domain_error("suff_stats: non-finite entry");

    SuffStats s;
    s.n = n;
    for (const auto& row : data) {
        s.mean1 += row.x1;
        s.mean2 += row.x2;
    }
    s.mean1 /= n;
    s.mean2 /= n;

    double c11 = 0.0, c22 = 0.0, c12 = 0.0;
    for (const auto& row : data) {
        double d1 = row.x1 - s.mean1;
        double d2 = row.x2 - s.mean2;
        c11 += d1 * d1;
        c22 += d2 * d2;
        c12 += d1 * d2;
    }
    s.s1sq = c11 / n;
    s.s2sq = c22 / n;
    s.s12 = c12 / n;
    if (!(s.s1sq > 0.0) || !(s.s2sq > 0.0))
        throw degenerate_data("suff_stats: zero variance in a coordinate");

    double sd1 = std::sqrt(s.s1sq);
    double sd2 = std::sqrt(s.s2sq);
    double raw_r = s.s12 / (sd1 * sd2);
    s.r_near_one = std::fabs(raw_r) >= 1.0 - 1e-12;
    s.r = std::fmin(1.0, std::fmax(-1.0, raw_r));
    s.b = (s.s1sq + s.s2sq) / std::sqrt(4.0 * s.s1sq * s.s2sq);

    for (const auto& row : data) {
        double z1 = (row.x1 - s.mean1) / sd1;
        double z2 = (row.x2 - s.mean2) / sd2;
        s.dplus += (z1 + z2) * (z1 + z2);
        s.dminus += (z1 - z2) * (z1 - z2);
    }

    s.a11 = n * s.s1sq;
    s.a12 = n * s.s12;
    s.a22 = n * s.s2sq;
    return s;
}

TransformedCorrelation transform(double r) {
    if (!(r > -1.0 && r < 1.0))
        throw singular_transform("transform: |r| must be < 1");
    return {std::atanh(r), r / std::sqrt((1.0 - r) * (1.0 + r))};
}

}  // namespace rhoci
