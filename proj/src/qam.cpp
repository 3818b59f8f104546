#include "jsfr/qam.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace jsfr {

namespace {

struct AxisMap {
    int levels;
    double scale;  // 1/sqrt(mean power) for the full constellation
    // gray code order: index g -> amplitude 2*perm[g] - (levels-1)
    const int* gray_to_level;
};

// bit pattern (as integer, MSB first) -> level index 0..L-1 (level = 2i-(L-1))
constexpr int kGray2[2] = {0, 1};
constexpr int kGray4[4] = {0, 1, 3, 2};
constexpr int kGray8[8] = {0, 1, 3, 2, 7, 6, 4, 5};

AxisMap axis_map(unsigned order) {
    switch (order) {
        case 4:  return {2, 1.0 / std::sqrt(2.0), kGray2};
        case 16: return {4, 1.0 / std::sqrt(10.0), kGray4};
        case 64: return {8, 1.0 / std::sqrt(42.0), kGray8};
        default: throw std::invalid_argument("qam: unsupported order");
    }
}

unsigned axis_bits(unsigned order) { return bits_per_symbol(order) / 2; }

double level_amp(const AxisMap& m, int pattern) {
    return static_cast<double>(2 * m.gray_to_level[pattern] - (m.levels - 1)) *
           m.scale;
}

int slice_level_index(const AxisMap& m, double v) {
    int idx = static_cast<int>(std::floor((v / m.scale + m.levels - 1) / 2.0 + 0.5));
    if (idx < 0) idx = 0;
    if (idx >= m.levels) idx = m.levels - 1;
    return idx;
}

int level_index_to_pattern(const AxisMap& m, int idx) {
    for (int p = 0; p < m.levels; ++p) {
        if (m.gray_to_level[p] == idx) return p;
    }
    return 0;
}

}  // namespace

unsigned bits_per_symbol(unsigned order) {
    switch (order) {
        case 4:  return 2;
        case 16: return 4;
        case 64: return 6;
        default: throw std::invalid_argument("qam: unsupported order");
    }
}

cplx map_symbol(unsigned order, const std::uint8_t* bits) {
    const AxisMap m = axis_map(order);
    const unsigned ab = axis_bits(order);
    int pi = 0, pq = 0;
    for (unsigned i = 0; i < ab; ++i) {
        pi = (pi << 1) | (bits[i] & 1);
        pq = (pq << 1) | (bits[ab + i] & 1);
    }
    return {level_amp(m, pi), level_amp(m, pq)};
}

void demap_symbol(unsigned order, cplx point, std::uint8_t* bits_out) {
    const AxisMap m = axis_map(order);
    const unsigned ab = axis_bits(order);
    const int pi = level_index_to_pattern(m, slice_level_index(m, point.real()));
    const int pq = level_index_to_pattern(m, slice_level_index(m, point.imag()));
    for (unsigned i = 0; i < ab; ++i) {
        bits_out[i] = static_cast<std::uint8_t>((pi >> (ab - 1 - i)) & 1);
        bits_out[ab + i] = static_cast<std::uint8_t>((pq >> (ab - 1 - i)) & 1);
    }
}

cplx hard_decision(unsigned order, cplx point) {
    const AxisMap m = axis_map(order);
    const int ii = slice_level_index(m, point.real());
    const int qi = slice_level_index(m, point.imag());
    return {static_cast<double>(2 * ii - (m.levels - 1)) * m.scale,
            static_cast<double>(2 * qi - (m.levels - 1)) * m.scale};
}

std::vector<cplx> constellation(unsigned order) {
    const unsigned nb = bits_per_symbol(order);
    std::vector<cplx> pts(order);
    std::vector<std::uint8_t> bits(nb);
    for (unsigned v = 0; v < order; ++v) {
        for (unsigned i = 0; i < nb; ++i) bits[i] = (v >> (nb - 1 - i)) & 1;
        pts[v] = map_symbol(order, bits.data());
    }
    return pts;
}

cplx corner_point(unsigned order, bool neg_i, bool neg_q) {
    const AxisMap m = axis_map(order);
    const double amp = static_cast<double>(m.levels - 1) * m.scale;
    return {neg_i ? -amp : amp, neg_q ? -amp : amp};
}

std::vector<cplx> map_bits(unsigned order, const std::vector<std::uint8_t>& bits) {
    const unsigned nb = bits_per_symbol(order);
    if (bits.size() % nb != 0) {
        throw std::invalid_argument("qam: bit count not a multiple of bits/symbol");
    }
    std::vector<cplx> out(bits.size() / nb);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = map_symbol(order, bits.data() + i * nb);
    }
    return out;
}

std::vector<std::uint8_t> demap_points(unsigned order,
                                       const std::vector<cplx>& pts) {
    const unsigned nb = bits_per_symbol(order);
    std::vector<std::uint8_t> out(pts.size() * nb);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        demap_symbol(order, pts[i], out.data() + i * nb);
    }
    return out;
}

}  // namespace jsfr
