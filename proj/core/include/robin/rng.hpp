#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace robin {

using cxd = std::complex<double>;

// Counter-based seed derivation: child streams are a pure function of the
// parent seed and a path of integer tags, so per-environment / per-shard
// streams are identical no matter how work is scheduled.
std::uint64_t split_mix(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) {
    return derive_seed(base, {a});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return derive_seed(base, {a, b});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return derive_seed(base, {a, b, c});
}

// Self-contained xoshiro256** generator with explicit conversions to doubles
// and Gaussians. Distributions are implemented here (not via <random>
// distribution objects) so sequences are identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double uniform();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in [0, n), unbiased (rejection sampling).
    std::uint64_t uniform_index(std::uint64_t n);

    // Standard normal via the Marsaglia polar method.
    double gaussian();
    // Circularly-symmetric complex Gaussian with E|z|^2 = 1.
    cxd complex_gaussian();
    // Complex with re and im each uniform in [-1, 1].
    cxd complex_uniform();
    // One random 4-QAM point {+-1 +- 1j}.
    cxd qam_symbol();

  private:
    std::uint64_t state_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace robin
