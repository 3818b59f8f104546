#include "jsfr/rrc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jsfr/fft.hpp"

namespace jsfr {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

std::vector<double> rrc_taps(const RrcSpec& spec) {
    if (spec.rolloff < 0.0 || spec.rolloff > 1.0) {
        throw std::invalid_argument("rrc: rolloff must be in [0,1]");
    }
    if (spec.sps < 2) throw std::invalid_argument("rrc: sps must be >= 2");
    if (spec.span < 1) throw std::invalid_argument("rrc: span must be >= 1");

    const double b = spec.rolloff;
    const int half = spec.span * spec.sps / 2;
    std::vector<double> h(2 * half + 1);
    for (int i = -half; i <= half; ++i) {
        const double t = static_cast<double>(i) / spec.sps;  // symbols
        double v;
        if (std::abs(t) < 1e-12) {
            v = 1.0 - b + 4.0 * b / kPi;
        } else if (b > 0.0 &&
                   std::abs(std::abs(t) - 1.0 / (4.0 * b)) < 1e-9) {
            const double c = kPi / (4.0 * b);
            v = b / std::numbers::sqrt2 *
                ((1.0 + 2.0 / kPi) * std::sin(c) +
                 (1.0 - 2.0 / kPi) * std::cos(c));
        } else {
            const double den = kPi * t * (1.0 - 16.0 * b * b * t * t);
            v = (std::sin(kPi * t * (1.0 - b)) +
                 4.0 * b * t * std::cos(kPi * t * (1.0 + b))) /
                den;
        }
        h[static_cast<std::size_t>(i + half)] = v;
    }
    double e = 0.0;
    for (double v : h) e += v * v;
    const double scale = std::sqrt(static_cast<double>(spec.sps) / e);
    for (double& v : h) v *= scale;
    return h;
}

std::vector<cplx> filter_same(const std::vector<cplx>& x,
                              const std::vector<double>& taps) {
    const std::size_t n = x.size();
    const std::size_t t = taps.size();
    if (n == 0) throw std::invalid_argument("filter: empty input");
    const std::size_t m = next_pow2(n + t - 1);
    std::vector<cplx> xf(m, 0.0), hf(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) xf[i] = x[i];
    for (std::size_t i = 0; i < t; ++i) hf[i] = taps[i];
    fft_inplace(xf);
    fft_inplace(hf);
    for (std::size_t i = 0; i < m; ++i) xf[i] *= hf[i];
    ifft_inplace(xf);
    const std::size_t delay = (t - 1) / 2;
    return std::vector<cplx>(xf.begin() + static_cast<long>(delay),
                             xf.begin() + static_cast<long>(delay + n));
}

std::vector<cplx> filter_circular(const std::vector<cplx>& x,
                                  const std::vector<double>& taps) {
    const std::size_t n = x.size();
    const std::size_t t = taps.size();
    if (t > n) throw std::invalid_argument("filter: taps longer than block");
    const std::size_t center = (t - 1) / 2;
    std::vector<cplx> kern(n, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t lag = (i + n - center) % n;
        kern[lag] += taps[i];
    }
    std::vector<cplx> xf = x;
    fft_inplace(xf);
    fft_inplace(kern);
    for (std::size_t i = 0; i < n; ++i) xf[i] *= kern[i];
    ifft_inplace(xf);
    return xf;
}

ComplexSignal rrc_filter(const ComplexSignal& s, const RrcSpec& spec) {
    if (s.samples.empty()) throw std::invalid_argument("rrc_filter: empty input");
    const auto taps = rrc_taps(spec);
    ComplexSignal out = s;
    out.samples = filter_same(s.samples, taps);
    return out;
}

}  // namespace jsfr
