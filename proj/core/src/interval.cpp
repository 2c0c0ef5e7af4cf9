#include "rhoci/interval.hpp"

#include <algorithm>
#include <cmath>

namespace rhoci {

const std::array<MethodId, kMethodCount>& all_methods() {
    static const std::array<MethodId, kMethodCount> ids = {
        MethodId::Exact,          MethodId::FisherZ,       MethodId::Hotelling1,
        MethodId::Hotelling2,     MethodId::Hotelling3,    MethodId::Hotelling4,
        MethodId::Ruben,          MethodId::Muddapur1,     MethodId::Muddapur2,
        MethodId::SignedLR,       MethodId::ModifiedSignedLR,
        MethodId::KrishnamoorthyGCI, MethodId::WN1,        MethodId::WN2,
        MethodId::HaddadProvost,  MethodId::NewGCI,        MethodId::PB,
    };
    return ids;
}

std::string_view method_name(MethodId id) {
    switch (id) {
        case MethodId::Exact: return "exact";
        case MethodId::FisherZ: return "fisher_z";
        case MethodId::Hotelling1: return "hotelling_z1";
        case MethodId::Hotelling2: return "hotelling_z2";
        case MethodId::Hotelling3: return "hotelling_z3";
        case MethodId::Hotelling4: return "hotelling_z4";
        case MethodId::Ruben: return "ruben";
        case MethodId::Muddapur1: return "muddapur1";
        case MethodId::Muddapur2: return "muddapur2";
        case MethodId::SignedLR: return "signed_lr";
        case MethodId::ModifiedSignedLR: return "modified_signed_lr";
        case MethodId::KrishnamoorthyGCI: return "krishnamoorthy";
        case MethodId::WN1: return "wn1";
        case MethodId::WN2: return "wn2";
        case MethodId::HaddadProvost: return "haddad_provost";
        case MethodId::NewGCI: return "new_gci";
        case MethodId::PB: return "pb";
    }
    return "unknown";
}

std::optional<MethodId> method_from_name(std::string_view name) {
    for (MethodId id : all_methods())
        if (method_name(id) == name) return id;
    return std::nullopt;
}

int method_min_n(MethodId id) {
    switch (id) {
        case MethodId::Exact:
        case MethodId::FisherZ:
        case MethodId::Ruben:
            return 4;
        default:
            return 3;
    }
}

bool method_needs_raw_data(MethodId id) {
    switch (id) {
        case MethodId::Muddapur1:
        case MethodId::SignedLR:
        case MethodId::ModifiedSignedLR:
        case MethodId::HaddadProvost:
            return true;
        default:
            return false;
    }
}

bool method_is_monte_carlo(MethodId id) {
    switch (id) {
        case MethodId::KrishnamoorthyGCI:
        case MethodId::NewGCI:
        case MethodId::PB:
            return true;
        default:
            return false;
    }
}

ConfidenceInterval make_interval(double lo, double hi, MethodId id, double level) {
    if (lo > hi) std::swap(lo, hi);
    ConfidenceInterval ci;
    ci.method = id;
    ci.level = level;
    ci.clamped_lower = lo < -1.0;
    ci.clamped_upper = hi > 1.0;
    ci.lower = std::fmax(-1.0, std::fmin(1.0, lo));
    ci.upper = std::fmax(-1.0, std::fmin(1.0, hi));
    return ci;
}

ConfidenceInterval degenerate_interval(double r, MethodId id, double level) {
    ConfidenceInterval ci;
    ci.method = id;
    ci.level = level;
    ci.lower = ci.upper = std::fmax(-1.0, std::fmin(1.0, r));
    ci.clamped_lower = ci.clamped_upper = true;
    return ci;
}

}  // namespace rhoci
