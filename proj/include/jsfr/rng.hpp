#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace jsfr {

/// Deterministic random stream derived from (master seed, stage tag, point,
/// trial). Every pipeline stage owns its own substream, so adding a stage or
/// changing how many draws one stage makes never perturbs the others.
class RandomStream {
public:
    RandomStream(std::uint64_t master, std::string_view stage,
                 std::uint64_t point = 0, std::uint64_t trial = 0);

    std::uint64_t next_u64();
    double uniform();    // [0, 1)
    double gaussian();   // N(0, 1)
    std::complex<double> cgaussian();  // circularly symmetric, E|z|^2 = 1

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b,
                       std::uint64_t c = 0, std::uint64_t d = 0);

}  // namespace jsfr
