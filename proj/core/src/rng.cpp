#include "robin/rng.hpp"

#include <cmath>

namespace robin {

std::uint64_t split_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = split_mix(base ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t tag : path) {
        s = split_mix(s ^ split_mix(tag + 0xbb67ae8584caa73bULL));
    }
    return s;
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
} // namespace

Rng::Rng(std::uint64_t seed) {
    // Expand the seed with splitmix64; xoshiro state must not be all zero.
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s = split_mix(s);
        word = s;
    }
    state_[0] |= 1;
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t v = next_u64();
    while (v >= limit) {
        v = next_u64();
    }
    return v % n;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = uniform(-1.0, 1.0);
        v = uniform(-1.0, 1.0);
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

cxd Rng::complex_gaussian() {
    const double scale = std::sqrt(0.5);
    return {scale * gaussian(), scale * gaussian()};
}

cxd Rng::complex_uniform() {
    return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
}

cxd Rng::qam_symbol() {
    const std::uint64_t bits = next_u64();
    return {(bits & 1) ? 1.0 : -1.0, (bits & 2) ? 1.0 : -1.0};
}

} // namespace robin
