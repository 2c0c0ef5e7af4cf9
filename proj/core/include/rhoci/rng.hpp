#ifndef RHOCI_RNG_HPP
#define RHOCI_RNG_HPP

#include <array>
#include <cstdint>

namespace rhoci {

// splitmix64 step; also the workhorse for seeding and hashing.
std::uint64_t splitmix64(std::uint64_t& state);

// Order-sensitive 64-bit combiner for deriving per-cell / per-replicate
// stream ids from structured keys.
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

// Seeded, splittable random stream (xoshiro256++ core).
//
// Identical (seed, stream_id) pairs reproduce identical draw sequences;
// distinct stream ids give statistically independent streams. A stream is
// cheap to construct, so parallel workers each build their own.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1), 53-bit resolution.
    double uniform();

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();

    // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape > 0.
    double gamma(double shape);

    // Chi-square with df > 0 (not restricted to integers).
    double chisq(double df);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace rhoci

#endif
