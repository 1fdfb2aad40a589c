#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace jumpcast {

// Deterministic RNG used everywhere in the project. Gaussian and Poisson
// draws are hand-rolled so output streams do not depend on the standard
// library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : base_seed_(seed), eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    uint64_t uniform_int(uint64_t n) { return n == 0 ? 0 : eng_() % n; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Knuth below mean 64, rounded normal approximation above (counts only).
    uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 64.0) {
            double v = std::round(normal(mean, std::sqrt(mean)));
            return v <= 0.0 ? 0 : static_cast<uint64_t>(v);
        }
        double limit = std::exp(-mean);
        double p = 1.0;
        uint64_t k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Independent child stream derived from the construction seed and a tag;
    // insensitive to how much of this stream has been consumed.
    Rng child(std::string_view tag) const {
        uint64_t h = 1469598103934665603ull;
        for (char c : tag) {
            h ^= static_cast<uint8_t>(c);
            h *= 1099511628211ull;
        }
        return Rng(seed_mix(base_seed_, h));
    }

    Rng child(uint64_t salt) const { return Rng(seed_mix(base_seed_, salt)); }

    uint64_t base_seed() const { return base_seed_; }

private:
    static uint64_t seed_mix(uint64_t a, uint64_t b) {
        uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    uint64_t base_seed_;
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace jumpcast
