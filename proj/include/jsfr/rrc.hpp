#pragma once

#include <vector>

#include "jsfr/signal.hpp"

namespace jsfr {

/// Root-raised-cosine shaping parameters. Narrow roll-off needs a long span
/// to push symbol-instant ISI down; the tolerances used by the test suite
/// assume the 64-symbol default.
struct RrcSpec {
    double rolloff = 0.01;
    int span = 64;  // symbols
    int sps = 8;    // samples per symbol
};

/// Symmetric RRC taps, span*sps + 1 long, normalized so sum(h^2) = sps.
/// With that convention a unit-power symbol train keeps unit waveform power
/// after upsampling and shaping.
std::vector<double> rrc_taps(const RrcSpec& spec);

/// Linear-phase same-length filtering: linear convolution trimmed by the
/// group delay, so output length equals input length.
ComplexSignal rrc_filter(const ComplexSignal& s, const RrcSpec& spec);

// Zero-phase circular convolution with symmetric real taps centered at lag
// zero. Used for block-periodic waveform processing.
std::vector<cplx> filter_circular(const std::vector<cplx>& x,
                                  const std::vector<double>& taps);

// Linear convolution of x with real taps, trimmed by (taps-1)/2 on both
// sides (same-length output).
std::vector<cplx> filter_same(const std::vector<cplx>& x,
                              const std::vector<double>& taps);

}  // namespace jsfr
