#ifndef PVK_CORE_RNG_HPP
#define PVK_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace pvk {

// Seeded RNG wrapper. mt19937_64 output is fully specified by the standard;
// the helpers below avoid std distributions, whose sequences are
// implementation-defined, so every consumer is reproducible bit-for-bit.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound). Rejection-free multiply-shift would bias for huge
    // bounds; plain rejection keeps it exact.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller; one value per call, the pair's second half is discarded to
    // keep call sites order-independent.
    double gaussian(double mean = 0.0, double stddev = 1.0) {
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    // k distinct indices from [0, n), ascending order (selection sampling).
    std::vector<std::size_t> sample_ascending(std::size_t n, std::size_t k) {
        std::vector<std::size_t> out;
        out.reserve(k);
        std::size_t remaining = n, needed = k;
        for (std::size_t i = 0; i < n && needed > 0; ++i) {
            if (uniform_below(remaining) < needed) {
                out.push_back(i);
                --needed;
            }
            --remaining;
        }
        return out;
    }

    // Partial Fisher-Yates: k distinct indices from [0, n) in draw order.
    std::vector<std::size_t> sample_draw_order(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::size_t> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + uniform_below(n - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace pvk

#endif
