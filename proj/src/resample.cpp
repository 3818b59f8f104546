#include "jsfr/resample.hpp"

#include <cmath>
#include <stdexcept>

#include "jsfr/fft.hpp"

namespace jsfr {

ComplexSignal resample(const ComplexSignal& s, double new_rate) {
    if (new_rate <= 0) throw std::invalid_argument("resample: rate must be > 0");
    if (s.samples.empty()) throw std::invalid_argument("resample: empty input");

    const std::size_t n = s.size();
    const double m_exact = static_cast<double>(n) * new_rate / s.sample_rate;
    const double m_round = std::round(m_exact);
    if (std::abs(m_exact - m_round) > 1e-6 || m_round < 1.0) {
        throw std::invalid_argument("resample: unsupported rate ratio for this block");
    }
    const std::size_t m = static_cast<std::size_t>(m_round);
    if (m == n) {
        ComplexSignal out = s;
        out.sample_rate = new_rate;
        return out;
    }

    std::vector<cplx> spec = s.samples;
    fft_inplace(spec);
    std::vector<cplx> out(m, 0.0);
    if (m > n) {
        // upsample: spread the old spectrum, splitting the Nyquist bin
        const std::size_t half = n / 2;
        for (std::size_t k = 0; k < half; ++k) out[k] = spec[k];
        for (std::size_t k = half + 1; k < n; ++k) out[k + m - n] = spec[k];
        if (n % 2 == 0) {
            out[half] = spec[half] * 0.5;
            out[m - half] = spec[half] * 0.5;
        } else {
            out[half] = spec[half];
        }
    } else {
        // downsample: keep the band around DC, folding the new Nyquist bin
        const std::size_t half = m / 2;
        for (std::size_t k = 0; k < half; ++k) out[k] = spec[k];
        for (std::size_t k = half + 1; k < m; ++k) out[k] = spec[k + n - m];
        if (m % 2 == 0) {
            out[half] = spec[half] + spec[n - half];
        } else {
            out[half] = spec[half];
        }
    }
    const double scale = static_cast<double>(m) / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    ifft_inplace(out);

    ComplexSignal r;
    r.samples = std::move(out);
    r.sample_rate = new_rate;
    r.center_offset = s.center_offset;
    return r;
}

}  // namespace jsfr
