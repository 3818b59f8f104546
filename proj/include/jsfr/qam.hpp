#pragma once

#include <cstdint>
#include <vector>

#include "jsfr/fft.hpp"

namespace jsfr {

// Square-QAM with per-axis Gray coding, unit average power. The first half
// of a symbol's bits select the I level, the second half the Q level.
// Level tables (before normalization):
//   2 levels:  0 -> -1,  1 -> +1
//   4 levels:  00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
//   8 levels:  000 -7, 001 -5, 011 -3, 010 -1, 110 +1, 111 +3, 101 +5, 100 +7
unsigned bits_per_symbol(unsigned order);  // throws unless order in {4,16,64}

cplx map_symbol(unsigned order, const std::uint8_t* bits);
void demap_symbol(unsigned order, cplx point, std::uint8_t* bits_out);

/// Nearest constellation point (per-axis slicing).
cplx hard_decision(unsigned order, cplx point);

std::vector<cplx> constellation(unsigned order);

/// Maximum-energy corner point with the given quadrant signs; pilot symbols
/// use these for the best phase-estimation leverage.
cplx corner_point(unsigned order, bool neg_i, bool neg_q);

std::vector<cplx> map_bits(unsigned order, const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> demap_points(unsigned order, const std::vector<cplx>& pts);

}  // namespace jsfr
