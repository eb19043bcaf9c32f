#ifndef BADCODES_RNG_HPP
#define BADCODES_RNG_HPP

#include <cmath>
#include <cstdint>

namespace badcodes {

// Counter-based stream: output k is a hash of (key, k), so streams can be
// split and replayed without touching each other's state.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream ^ 0x9e3779b97f4a7c15ull))) {}

    std::uint64_t next_u64() {
        return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
    }

    // uniform in [0,1) with 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // rejection sampling, no modulo bias
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    double next_gaussian() {
        // Box-Muller, one value per call (cache the pair)
        if (have_spare_) { have_spare_ = false; return spare_; }
        double u1, u2;
        do { u1 = next_double(); } while (u1 <= 0.0);
        u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Independent child stream; deterministic in (parent key, id).
    RandomStream split(std::uint64_t id) const {
        RandomStream child(0);
        child.key_ = mix(key_ ^ mix(id + 0x632be59bd9b4e019ull));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t key() const { return key_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace badcodes

#endif
