#include "jsfr/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jsfr {

ComplexSignal make_signal(std::vector<cplx> samples, double rate,
                          double center_offset) {
    if (rate <= 0) throw std::invalid_argument("signal: sample_rate must be > 0");
    ComplexSignal s;
    s.samples = std::move(samples);
    s.sample_rate = rate;
    s.center_offset = center_offset;
    return s;
}

JonesSignal make_jones(ComplexSignal x, ComplexSignal y) {
    if (x.size() != y.size() || x.sample_rate != y.sample_rate ||
        x.center_offset != y.center_offset) {
        throw std::invalid_argument("jones: x/y must share length, rate, offset");
    }
    return JonesSignal{std::move(x), std::move(y)};
}

double power(const std::vector<cplx>& v) {
    if (v.empty()) throw std::invalid_argument("power: empty signal");
    double acc = 0.0;
    for (const auto& s : v) acc += std::norm(s);
    return acc / static_cast<double>(v.size());
}

double power(const ComplexSignal& s) { return power(s.samples); }

ComplexSignal frequency_shift(const ComplexSignal& s, double df) {
    if (std::abs(df) >= s.sample_rate / 2) {
        throw std::invalid_argument("frequency_shift: shift would alias");
    }
    ComplexSignal out = s;
    if (df != 0.0) {
        const double w = -2.0 * std::numbers::pi * df / s.sample_rate;
        for (std::size_t n = 0; n < out.size(); ++n) {
            out.samples[n] *= std::polar(1.0, w * static_cast<double>(n));
        }
    }
    out.center_offset = s.center_offset - df;
    return out;
}

JonesSignal frequency_shift(const JonesSignal& s, double df) {
    return JonesSignal{frequency_shift(s.x, df), frequency_shift(s.y, df)};
}

cplx remove_tone(ComplexSignal& s, double freq) {
    if (s.samples.empty()) throw std::invalid_argument("remove_tone: empty signal");
    const double w = 2.0 * std::numbers::pi * freq / s.sample_rate;
    cplx acc = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        acc += s.samples[n] * std::polar(1.0, -w * static_cast<double>(n));
    }
    acc /= static_cast<double>(s.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
        s.samples[n] -= acc * std::polar(1.0, w * static_cast<double>(n));
    }
    return acc;
}

}  // namespace jsfr
