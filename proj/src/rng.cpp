#include "jsfr/rng.hpp"

#include <cmath>
#include <numbers>

namespace jsfr {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                       std::uint64_t d) {
    std::uint64_t state = a;
    state ^= splitmix64(state) + b;
    state ^= splitmix64(state) + c;
    state ^= splitmix64(state) + d;
    return splitmix64(state);
}

RandomStream::RandomStream(std::uint64_t master, std::string_view stage,
                           std::uint64_t point, std::uint64_t trial) {
    std::uint64_t state = mix_seed(master, fnv1a(stage), point, trial);
    // xoshiro256++ state, guaranteed nonzero by the splitmix chain
    for (auto& w : s_) w = splitmix64(state);
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

std::complex<double> RandomStream::cgaussian() {
    return {gaussian() * std::numbers::sqrt2 / 2.0,
            gaussian() * std::numbers::sqrt2 / 2.0};
}

}  // namespace jsfr
