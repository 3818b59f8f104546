#pragma once

#include "jsfr/signal.hpp"

namespace jsfr {

/// Band-limited rate conversion over one FFT block. The new length
/// N * new_rate / old_rate must be an integer; anything else is rejected.
ComplexSignal resample(const ComplexSignal& s, double new_rate);

}  // namespace jsfr
