#include "jsfr/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace jsfr {

namespace {

// FFTW planning is not thread safe; execution on distinct buffers is.
// Plans are cached per (size, direction) and created with FFTW_UNALIGNED
// so they can run on any std::vector storage.
std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

void run(std::vector<cplx>& x, int sign) {
    if (x.empty()) throw std::invalid_argument("fft: empty input");
    fftw_plan p = plan_for(x.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void fft_inplace(std::vector<cplx>& x) { run(x, FFTW_FORWARD); }

void ifft_inplace(std::vector<cplx>& x) {
    run(x, FFTW_BACKWARD);
    const double s = 1.0 / static_cast<double>(x.size());
    for (auto& v : x) v *= s;
}

std::vector<cplx> fft(std::vector<cplx> x) {
    fft_inplace(x);
    return x;
}

std::vector<cplx> ifft(std::vector<cplx> x) {
    ifft_inplace(x);
    return x;
}

double bin_frequency(std::size_t k, std::size_t n, double rate) {
    double f = static_cast<double>(k) * rate / static_cast<double>(n);
    if (f > rate / 2) f -= rate;
    return f;
}

double snap_to_bin(double f, std::size_t n, double rate) {
    return std::round(f * static_cast<double>(n) / rate) * rate /
           static_cast<double>(n);
}

}  // namespace jsfr
