#pragma once

#include <cmath>
#include <cstdint>

namespace bigjump {

// Seeded, splittable random stream (xoshiro256++ state, splitmix64 seeding).
// The output sequence is a pure function of (seed, stream_id), independent of
// platform and standard-library version, so batched Monte Carlo runs merge to
// reproducible aggregates. Distinct stream_ids give independent-quality
// streams; do not share one stream across threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {
        std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
        for (auto& s : state_) s = splitmix64(z);
        // All-zero state is invalid for xoshiro; splitmix64 never yields four
        // zeros for consecutive calls, but guard anyway.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0,1]; never returns 0, so -log(u) is always finite.
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on [0,1).
    double uniform_co() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform()); }

    // Box-Muller; consumes two uniforms per pair, caches the second draw.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform_co();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    // Pareto with tail P(X >= x) = (x / floor)^(-index) for x >= floor.
    double pareto(double index, double floor) {
        return floor * std::pow(uniform(), -1.0 / index);
    }

    // Knuth multiplication method, chunked so exp(-mean) never underflows.
    std::uint64_t poisson(double mean) {
        std::uint64_t count = 0;
        while (mean > 500.0) {
            // Split off a chunk; sum of independent Poissons is Poisson.
            count += poisson_small(500.0);
            mean -= 500.0;
        }
        return count + poisson_small(mean);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& z) {
        z += 0x9e3779b97f4a7c15ULL;
        std::uint64_t r = z;
        r = (r ^ (r >> 30)) * 0xbf58476d1ce4e5b9ULL;
        r = (r ^ (r >> 27)) * 0x94d049bb133111ebULL;
        return r ^ (r >> 31);
    }

    std::uint64_t poisson_small(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double product = uniform();
        while (product > limit) {
            ++k;
            product *= uniform();
        }
        return k;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace bigjump
