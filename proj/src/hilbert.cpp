#include "jsfr/hilbert.hpp"

#include <stdexcept>

#include "jsfr/fft.hpp"

namespace jsfr {

std::vector<double> hilbert_phase(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("hilbert_phase: need >= 2 samples");

    std::vector<cplx> spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = x[i];
    fft_inplace(spec);

    spec[0] = 0.0;
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < half; ++k) spec[k] *= cplx(0.0, -1.0);
    if (n % 2 == 0) spec[half] = 0.0;
    for (std::size_t k = half + 1; k < n; ++k) spec[k] *= cplx(0.0, 1.0);

    ifft_inplace(spec);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = spec[i].real();
    return out;
}

}  // namespace jsfr
