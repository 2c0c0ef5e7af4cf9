#ifndef RHOCI_METHODS_HPP
#define RHOCI_METHODS_HPP

#include "rhoci/ci_montecarlo.hpp"
#include "rhoci/interval.hpp"
#include "rhoci/rng.hpp"
#include "rhoci/summary.hpp"

namespace rhoci {

// Evaluates any of the seventeen methods from the sufficient statistics.
// Monte Carlo methods draw from rng with cfg.m inner replicates; the
// deterministic methods ignore both. Throws method_not_applicable below the
// method's minimum n and the per-method failure errors otherwise.
ConfidenceInterval compute_interval(MethodId id, const SuffStats& stats, double level,
                                    const MCConfig& cfg, RngStream& rng);

// Synthetic unit-variance statistics carrying a given (r, n): what the CLI
// uses when only the sample correlation is supplied. Methods that need more
// of the sample than (r, n) must not be fed this (see method_needs_raw_data).
SuffStats stats_from_r(double r, int n);

}  // namespace rhoci

#endif
