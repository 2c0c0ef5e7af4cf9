#ifndef RHOCI_INTERVAL_HPP
#define RHOCI_INTERVAL_HPP

#include <array>
#include <optional>
#include <string_view>

namespace rhoci {

// The seventeen interval estimators.
enum class MethodId {
    Exact,
    FisherZ,
    Hotelling1,
    Hotelling2,
    Hotelling3,
    Hotelling4,
    Ruben,
    Muddapur1,
    Muddapur2,
    SignedLR,
    ModifiedSignedLR,
    KrishnamoorthyGCI,
    WN1,
    WN2,
    HaddadProvost,
    NewGCI,
    PB,
};

inline constexpr int kMethodCount = 17;

const std::array<MethodId, kMethodCount>& all_methods();

// Stable lowercase names used on the CLI and in CSV output.
std::string_view method_name(MethodId id);
std::optional<MethodId> method_from_name(std::string_view name);

// Smallest sample size the method is defined for (the "---" table cells).
int method_min_n(MethodId id);

// True for methods that need more of the sample than (r, n):
// Muddapur1 (b), HaddadProvost (D+/D-), SignedLR and ModifiedSignedLR (likelihood).
bool method_needs_raw_data(MethodId id);

// True for the Monte Carlo methods (KrishnamoorthyGCI, NewGCI, PB).
bool method_is_monte_carlo(MethodId id);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    MethodId method = MethodId::FisherZ;
    double level = 0.95;
    bool clamped_lower = false;
    bool clamped_upper = false;

    double length() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

// Orders and clamps raw endpoints into [-1, 1], recording clamp flags.
ConfidenceInterval make_interval(double lo, double hi, MethodId id, double level);

// The [r, r] interval returned when |r| = 1 makes a transform singular.
ConfidenceInterval degenerate_interval(double r, MethodId id, double level);

}  // namespace rhoci

#endif
