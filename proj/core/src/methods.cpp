#include "rhoci/methods.hpp"

#include "rhoci/ci_analytic.hpp"
#include "rhoci/ci_exact.hpp"
#include "rhoci/ci_likelihood.hpp"
#include "rhoci/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace rhoci {

ConfidenceInterval compute_interval(MethodId id, const SuffStats& stats, double level,
                                    const MCConfig& cfg, RngStream& rng) {
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("compute_interval: level must lie in (0,1)");
    const double alpha = 1.0 - level;
    const double r = stats.r;
    const int n = stats.n;
    switch (id) {
        case MethodId::Exact:
            if (n < 4) throw method_not_applicable("exact: needs n >= 4");
            if (stats.r_near_one) return degenerate_interval(r, id, level);
            return exact_ci(r, n, alpha);
        case MethodId::FisherZ:
            return fisher_z_ci(r, n, alpha);
        case MethodId::Hotelling1:
            return hotelling_ci(r, n, alpha, 1);
        case MethodId::Hotelling2:
            return hotelling_ci(r, n, alpha, 2);
        case MethodId::Hotelling3:
            return hotelling_ci(r, n, alpha, 3);
        case MethodId::Hotelling4:
            return hotelling_ci(r, n, alpha, 4);
        case MethodId::Ruben:
            return ruben_ci(r, n, alpha);
        case MethodId::Muddapur1:
            return muddapur_t_ci(stats, alpha);
        case MethodId::Muddapur2:
            return jeyaratnam_ci(r, n, alpha);
        case MethodId::SignedLR:
            return lr_ci(stats, alpha, false);
        case MethodId::ModifiedSignedLR:
            return lr_ci(stats, alpha, true);
        case MethodId::KrishnamoorthyGCI:
            return kx_ci(r, n, alpha, cfg, rng);
        case MethodId::WN1:
            return withers_nadarajah_ci(r, n, alpha, 1);
        case MethodId::WN2:
            return withers_nadarajah_ci(r, n, alpha, 2);
        case MethodId::HaddadProvost:
            return haddad_provost_ci(stats, alpha);
        case MethodId::NewGCI:
            return new_gci(stats, alpha, cfg, rng);
        case MethodId::PB:
            return pb_ci(r, n, alpha, cfg, rng);
    }
    throw std::domain_error("compute_interval: unknown method");
}

SuffStats stats_from_r(double r, int n) {
    if (n < 2) throw std::domain_error("stats_from_r: n must be >= 2");
    if (!(r > -1.0 && r < 1.0))
        throw std::domain_error("stats_from_r: |r| must be < 1");
    SuffStats s;
    s.n = n;
    s.s1sq = s.s2sq = 1.0;
    s.s12 = r;
    s.r = r;
    s.b = 1.0;
    s.dplus = 2.0 * n * (1.0 + r);
    s.dminus = 2.0 * n * (1.0 - r);
    s.a11 = s.a22 = n;
    s.a12 = n * r;
    s.r_near_one = std::fabs(r) >= 1.0 - 1e-12;
    return s;
}

}  // namespace rhoci
