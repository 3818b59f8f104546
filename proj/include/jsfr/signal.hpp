#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "jsfr/fft.hpp"

namespace jsfr {

/// Uniformly sampled complex baseband waveform. Power is in linear units;
/// center_offset records how far the nominal band center sits from DC.
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate = 0.0;    // Hz
    double center_offset = 0.0;  // Hz

    std::size_t size() const { return samples.size(); }
};

/// Aligned X/Y polarization pair forming the Jones vector per sample.
struct JonesSignal {
    ComplexSignal x;
    ComplexSignal y;

    std::size_t size() const { return x.size(); }
    double sample_rate() const { return x.sample_rate; }
};

ComplexSignal make_signal(std::vector<cplx> samples, double rate,
                          double center_offset = 0.0);

// Throws if x/y differ in length, rate, or center offset.
JonesSignal make_jones(ComplexSignal x, ComplexSignal y);

/// Mean |s|^2 over the waveform.
double power(const ComplexSignal& s);
double power(const std::vector<cplx>& v);

/// Multiply by exp(-j 2 pi df t); spectral content moves down by df.
ComplexSignal frequency_shift(const ComplexSignal& s, double df);
JonesSignal frequency_shift(const JonesSignal& s, double df);

/// Least-squares projection of the complex exponential at `freq` out of the
/// waveform; returns the removed complex amplitude.
cplx remove_tone(ComplexSignal& s, double freq);

}  // namespace jsfr
