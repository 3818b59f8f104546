#pragma once

#include <vector>

namespace jsfr {

/// Discrete Hilbert transform of a real sequence over one FFT block:
/// positive-frequency bins scaled by -j, negative by +j, DC and Nyquist
/// zeroed. cos -> sin under this convention.
std::vector<double> hilbert_phase(const std::vector<double>& x);

}  // namespace jsfr
