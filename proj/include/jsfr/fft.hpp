#pragma once

#include <complex>
#include <vector>

namespace jsfr {

using cplx = std::complex<double>;

// In-place DFT, unnormalized forward / 1/N inverse. Arbitrary lengths.
void fft_inplace(std::vector<cplx>& x);
void ifft_inplace(std::vector<cplx>& x);

std::vector<cplx> fft(std::vector<cplx> x);
std::vector<cplx> ifft(std::vector<cplx> x);

// Frequency of bin k for an N-point transform at the given rate, in
// (-rate/2, rate/2].
double bin_frequency(std::size_t k, std::size_t n, double rate);

// Nearest bin-aligned frequency for an N-sample block. Tones placed on a
// bin stay periodic across the block.
double snap_to_bin(double f, std::size_t n, double rate);

}  // namespace jsfr
