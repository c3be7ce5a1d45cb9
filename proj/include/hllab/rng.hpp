#pragma once

#include <complex>
#include <cstdint>

namespace hllab {

// splitmix64 finalizer; bijective on uint64.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Sub-stream derivation rule: stream k of a master seed is seeded with
// mix64(master + (k+1) * golden). Used everywhere a parallel or indexed
// computation needs its own stream (alternating starts, batch items,
// probe cells), so results do not depend on scheduling.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Deterministic generator with portable distributions. std::mt19937 with
// std:: distributions is avoided: distribution output is
// implementation-defined and would break byte-identical reruns.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller, one spare value cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // uniform ±1
    double sign() { return (next_u64() & 1) ? 1.0 : -1.0; }

    // uniform over {1, i, -1, -i}
    std::complex<double> fourth_root() {
        switch (next_u64() & 3) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }

    std::complex<double> complex_normal() { return {normal(), normal()}; }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hllab
