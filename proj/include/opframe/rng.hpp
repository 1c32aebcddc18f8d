/*
 * rng.hpp — seeded random streams.
 *
 * Gaussian variates come from a hand-rolled Box-Muller over mt19937_64 so a
 * given seed produces the same stream on every platform; the standard
 * library's normal_distribution is implementation-defined and would break
 * byte-identical outputs. sub_seed derives independent per-item seeds, which
 * is what makes the sampling loops order-independent and safe to run under
 * OpenMP.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace opframe {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t item) {
    return splitmix64(seed ^ splitmix64(item + 1));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // Box-Muller; u1 shifted into (0, 1] so the log is finite.
        const double u1 =
            (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace opframe
