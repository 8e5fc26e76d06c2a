#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace riflab::detail {

/// Counter-seeded splitmix64 stream. Every Monte Carlo sample owns its own
/// stream derived from (seed, sample index), so estimates are reproducible
/// bit for bit and independent of evaluation order or batching.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ kInit)) {}

    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        Rng r(0);
        r.state_ = mix(mix(seed ^ kInit) + index * kGamma);
        return r;
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on the open unit disc (area measure), by rejection.
    std::complex<double> next_disc() {
        for (;;) {
            double x = 2.0 * next_double() - 1.0;
            double y = 2.0 * next_double() - 1.0;
            if (x * x + y * y < 1.0) return {x, y};
        }
    }

    /// Standard normal via Marsaglia polar; one value per call.
    double next_gaussian() {
        for (;;) {
            double u = 2.0 * next_double() - 1.0;
            double v = 2.0 * next_double() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0)
                return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kInit = 0x8121814FB2B9E1D5ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace riflab::detail
