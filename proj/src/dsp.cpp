#include "jsfr/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jsfr/fft.hpp"
#include "jsfr/qam.hpp"

namespace jsfr {

namespace {
constexpr double kPi = std::numbers::pi;
}

FoeEstimate estimate_freq_offset_detail(const ComplexSignal& field,
                                        double max_abs_offset) {
    const std::size_t n = field.size();
    if (n < 4) throw std::invalid_argument("foe: input too short");
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx s = field.samples[i];
        const cplx s2 = s * s;
        z[i] = s2 * s2;
    }
    fft_inplace(z);
    std::size_t peak = 0;
    double best = -1.0;
    std::vector<double> mags;
    mags.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (max_abs_offset > 0.0 &&
            std::abs(bin_frequency(k, n, field.sample_rate)) >
                4.0 * max_abs_offset) {
            continue;
        }
        const double m = std::norm(z[k]);
        mags.push_back(m);
        if (m > best) {
            best = m;
            peak = k;
        }
    }
    FoeEstimate est;
    est.offset = bin_frequency(peak, n, field.sample_rate) / 4.0;
    std::nth_element(mags.begin(), mags.begin() + static_cast<long>(mags.size() / 2),
                     mags.end());
    const double median = std::max(mags[mags.size() / 2], 1e-300);
    est.prominence_db = 10.0 * std::log10(best / median);
    return est;
}

double estimate_freq_offset(const ComplexSignal& field, double max_abs_offset) {
    return estimate_freq_offset_detail(field, max_abs_offset).offset;
}

ComplexSignal cd_compensate(const ComplexSignal& field, double fiber_km,
                            double beta2) {
    if (fiber_km == 0.0 || beta2 == 0.0) return field;
    const double length_m = fiber_km * 1e3;
    const std::size_t n = field.size();
    ComplexSignal out = field;
    fft_inplace(out.samples);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 2.0 * kPi * bin_frequency(k, n, field.sample_rate);
        out.samples[k] *= std::polar(1.0, -beta2 * w * w * length_m / 2.0);
    }
    ifft_inplace(out.samples);
    return out;
}

SyncResult synchronize(const ComplexSignal& field,
                       const std::vector<const ComplexSignal*>& refs) {
    const std::size_t n = field.size();
    if (refs.empty()) throw std::invalid_argument("sync: no references");

    std::vector<cplx> xf = field.samples;
    fft_inplace(xf);
    std::vector<double> metric(n, 0.0);
    for (const auto* ref : refs) {
        if (ref->size() > n) throw std::invalid_argument("sync: reference longer than capture");
        std::vector<cplx> rf(n, 0.0);
        for (std::size_t i = 0; i < ref->size(); ++i) rf[i] = ref->samples[i];
        fft_inplace(rf);
        for (std::size_t k = 0; k < n; ++k) rf[k] = xf[k] * std::conj(rf[k]);
        ifft_inplace(rf);
        for (std::size_t k = 0; k < n; ++k) metric[k] += std::norm(rf[k]);
    }

    std::size_t peak = 0;
    double peak_val = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (metric[k] > peak_val) {
            peak_val = metric[k];
            peak = k;
        }
    }
    const long guard = 16;
    double side = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        long d = static_cast<long>(k) - static_cast<long>(peak);
        d = std::abs(d);
        d = std::min<long>(d, static_cast<long>(n) - d);
        if (d > guard) side = std::max(side, metric[k]);
    }
    const double ratio_db = 10.0 * std::log10(peak_val / std::max(side, 1e-300));
    if (ratio_db < 3.0) throw std::runtime_error("sync: no training correlation peak");
    return {peak, ratio_db};
}

namespace {

// dense Hermitian rank-1 RLS propagation kept in flat arrays for speed
struct RlsState {
    std::size_t dim;
    std::vector<cplx> p;  // dim x dim, row major
    std::vector<cplx> pi; // scratch P*u

    explicit RlsState(std::size_t d, double delta) : dim(d), p(d * d, 0.0), pi(d) {
        for (std::size_t i = 0; i < d; ++i) p[i * d + i] = 1.0 / delta;
    }

    // returns gain vector k in `pi` scaled in place
    void gain(const std::vector<cplx>& u, double lambda) {
        for (std::size_t r = 0; r < dim; ++r) {
            cplx acc = 0.0;
            const cplx* row = &p[r * dim];
            for (std::size_t c = 0; c < dim; ++c) acc += row[c] * u[c];
            pi[r] = acc;
        }
        cplx uhpi = 0.0;
        for (std::size_t i = 0; i < dim; ++i) uhpi += std::conj(u[i]) * pi[i];
        const double denom = lambda + uhpi.real();
        for (std::size_t i = 0; i < dim; ++i) pi[i] /= denom;
        // P <- (P - k * (P u)^H) / lambda, with (P u) = denom * k
        const double inv_l = 1.0 / lambda;
        for (std::size_t r = 0; r < dim; ++r) {
            cplx* row = &p[r * dim];
            const cplx kr = pi[r] * denom;
            for (std::size_t c = 0; c < dim; ++c) {
                row[c] = (row[c] - kr * std::conj(pi[c])) * inv_l;
            }
        }
    }
};

}  // namespace

MimoResult mimo_equalize(const std::vector<const ComplexSignal*>& inputs,
                         const std::vector<cplx>& ref_x,
                         const std::vector<cplx>& ref_y,
                         std::size_t total_symbols, std::size_t sync_offset,
                         const MimoSpec& spec, unsigned qam_order) {
    if (inputs.empty() ||
        static_cast<int>(inputs.size()) != spec.n_inputs) {
        throw std::invalid_argument("mimo: input count does not match spec");
    }
    if (spec.taps < 1 || spec.taps % 2 == 0) {
        throw std::invalid_argument("mimo: taps must be odd and >= 1");
    }
    if (spec.rls_lambda <= 0.0 || spec.rls_lambda > 1.0) {
        throw std::invalid_argument("mimo: lambda out of range");
    }
    if (ref_x.size() < spec.train_len) {
        throw std::invalid_argument("mimo: training reference too short");
    }
    const bool dual = !ref_y.empty();
    const std::size_t len = inputs[0]->size();
    for (const auto* in : inputs) {
        if (in->size() != len) throw std::invalid_argument("mimo: input length mismatch");
    }

    const std::size_t taps = static_cast<std::size_t>(spec.taps);
    const std::size_t dim = taps * inputs.size();
    const long half = static_cast<long>(taps - 1) / 2;

    std::vector<cplx> u(dim);
    auto fill_input = [&](std::size_t sym) {
        std::size_t j = 0;
        for (const auto* in : inputs) {
            const long base = static_cast<long>(sync_offset) +
                              2 * static_cast<long>(sym) - half;
            for (std::size_t k = 0; k < taps; ++k, ++j) {
                const long idx = base + static_cast<long>(k);
                const std::size_t wrapped = static_cast<std::size_t>(
                    ((idx % static_cast<long>(len)) + static_cast<long>(len)) %
                    static_cast<long>(len));
                u[j] = in->samples[wrapped];
            }
        }
    };

    RlsState rls(dim, spec.rls_delta);
    std::vector<cplx> wx(dim, 0.0), wy(dim, 0.0);
    std::vector<double> mse(spec.train_len, 0.0);

    auto output = [&](const std::vector<cplx>& w) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) acc += std::conj(w[i]) * u[i];
        return acc;
    };
    auto update = [&](std::vector<cplx>& w, cplx err) {
        for (std::size_t i = 0; i < dim; ++i) w[i] += rls.pi[i] * std::conj(err);
    };

    for (std::size_t n = 0; n < spec.train_len; ++n) {
        fill_input(n);
        rls.gain(u, spec.rls_lambda);
        const cplx ex = ref_x[n] - output(wx);
        update(wx, ex);
        double e2 = std::norm(ex);
        if (dual) {
            const cplx ey = ref_y[n] - output(wy);
            update(wy, ey);
            e2 += std::norm(ey);
        }
        mse[n] = e2;
    }

    const std::size_t win = std::min<std::size_t>(100, spec.train_len / 2);
    double first = 0.0, last = 0.0;
    for (std::size_t i = 0; i < win; ++i) {
        first += mse[i];
        last += mse[spec.train_len - win + i];
    }
    first /= static_cast<double>(win);
    last /= static_cast<double>(win);

    MimoResult res;
    res.train_mse_first = first;
    res.train_mse_last = last;
    res.converged = std::isfinite(last) && last < first;

    // decision-directed tracking uses normalized LMS; the RLS inverse
    // correlation is not propagated beyond the training head
    const double nlms_mu = 0.2;
    auto nlms_update = [&](std::vector<cplx>& w, cplx err) {
        double energy = 1e-12;
        for (std::size_t i = 0; i < dim; ++i) energy += std::norm(u[i]);
        const double g = nlms_mu / energy;
        for (std::size_t i = 0; i < dim; ++i) w[i] += g * u[i] * std::conj(err);
    };

    res.out_x.resize(total_symbols);
    if (dual) res.out_y.resize(total_symbols);
    for (std::size_t n = 0; n < total_symbols; ++n) {
        fill_input(n);
        const cplx yx = output(wx);
        res.out_x[n] = yx;
        cplx yy = 0.0;
        if (dual) {
            yy = output(wy);
            res.out_y[n] = yy;
        }
        if (spec.mode == MimoSpec::Mode::TrainThenDd && n >= spec.train_len) {
            nlms_update(wx, hard_decision(qam_order, yx) - yx);
            if (dual) nlms_update(wy, hard_decision(qam_order, yy) - yy);
        }
    }
    return res;
}

namespace {

double bps_metric(const std::vector<cplx>& block, double angle,
                  unsigned qam_order) {
    const cplx rot = std::polar(1.0, -angle);
    double acc = 0.0;
    for (const cplx& s : block) {
        const cplx r = s * rot;
        acc += std::norm(r - hard_decision(qam_order, r));
    }
    return acc;
}

}  // namespace

std::vector<cplx> carrier_phase_estimate(const std::vector<cplx>& stream,
                                         const std::vector<std::size_t>& pilot_idx,
                                         const std::vector<cplx>& pilot_ref,
                                         const CpeSpec& spec,
                                         unsigned qam_order) {
    if (pilot_idx.size() != pilot_ref.size()) {
        throw std::invalid_argument("cpe: pilot index/value mismatch");
    }
    const std::size_t n = stream.size();
    std::vector<cplx> out = stream;

    // pilot-aided coarse phase, unwrapped and linearly interpolated
    if (!pilot_idx.empty()) {
        std::vector<double> raw(pilot_idx.size());
        double prev = 0.0;
        for (std::size_t k = 0; k < pilot_idx.size(); ++k) {
            if (pilot_idx[k] >= n) throw std::invalid_argument("cpe: pilot index out of range");
            double a = std::arg(stream[pilot_idx[k]] * std::conj(pilot_ref[k]));
            if (k > 0) {
                while (a - prev > kPi) a -= 2.0 * kPi;
                while (a - prev < -kPi) a += 2.0 * kPi;
            }
            raw[k] = a;
            prev = a;
        }
        // a short moving average knocks down per-pilot estimation noise;
        // the residual drift is left to the blind search below
        std::vector<double> ph(raw.size());
        for (std::size_t k = 0; k < raw.size(); ++k) {
            const std::size_t lo = k >= 2 ? k - 2 : 0;
            const std::size_t hi = std::min(k + 2, raw.size() - 1);
            double acc = 0.0;
            for (std::size_t m = lo; m <= hi; ++m) acc += raw[m];
            ph[k] = acc / static_cast<double>(hi - lo + 1);
        }
        for (std::size_t i = 0; i < n; ++i) {
            double theta;
            if (i <= pilot_idx.front()) {
                theta = ph.front();
            } else if (i >= pilot_idx.back()) {
                theta = ph.back();
            } else {
                std::size_t k = 0;
                while (pilot_idx[k + 1] < i) ++k;
                const double t =
                    static_cast<double>(i - pilot_idx[k]) /
                    static_cast<double>(pilot_idx[k + 1] - pilot_idx[k]);
                theta = ph[k] + t * (ph[k + 1] - ph[k]);
            }
            out[i] *= std::polar(1.0, -theta);
        }
    }

    // blind phase search over the residual pi/2 ambiguity, block by block
    const std::size_t win = static_cast<std::size_t>(std::max(spec.bps_window, 1));
    double prev_angle = 0.0;
    for (std::size_t start = 0; start < n; start += win) {
        const std::size_t stop = std::min(start + win, n);
        std::vector<cplx> block(out.begin() + static_cast<long>(start),
                                out.begin() + static_cast<long>(stop));
        double best_angle = 0.0, best = 1e300;
        for (int k = 0; k < spec.bps_angles; ++k) {
            // grid includes zero so a clean stream passes through unchanged
            const double a = -kPi / 4.0 + k * (kPi / 2.0) / spec.bps_angles;
            const double m = bps_metric(block, a, qam_order);
            if (m < best) {
                best = m;
                best_angle = a;
            }
        }
        // stitch against the previous block to stay cycle-slip free
        while (best_angle - prev_angle > kPi / 4.0) best_angle -= kPi / 2.0;
        while (best_angle - prev_angle < -kPi / 4.0) best_angle += kPi / 2.0;
        prev_angle = best_angle;
        const cplx rot = std::polar(1.0, -best_angle);
        for (std::size_t i = start; i < stop; ++i) out[i] *= rot;
    }
    return out;
}

double q_from_ber(double ber) {
    // BER = erfc(Q / sqrt(2)) / 2
    const double y = 2.0 * std::clamp(ber, 1e-15, 0.5);
    double x = std::sqrt(std::max(-std::log(y), 1e-12));  // rough start
    for (int it = 0; it < 60; ++it) {
        const double f = std::erfc(x) - y;
        const double df = -2.0 / std::sqrt(kPi) * std::exp(-x * x);
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-12) break;
    }
    return 20.0 * std::log10(std::max(x * std::numbers::sqrt2, 1e-12));
}

Metrics compute_metrics(const std::vector<std::uint8_t>& rx_bits,
                        const std::vector<std::uint8_t>& tx_bits,
                        const std::vector<cplx>& rx_syms,
                        const std::vector<cplx>& tx_syms) {
    if (rx_bits.size() != tx_bits.size() || rx_syms.size() != tx_syms.size()) {
        throw std::invalid_argument("metrics: length mismatch");
    }
    Metrics m;
    m.bits_total = tx_bits.size();
    for (std::size_t i = 0; i < tx_bits.size(); ++i) {
        if ((rx_bits[i] & 1) != (tx_bits[i] & 1)) ++m.bit_errors;
    }
    m.ber = m.bits_total
                ? static_cast<double>(m.bit_errors) / static_cast<double>(m.bits_total)
                : 0.0;
    double err = 0.0, refp = 0.0;
    for (std::size_t i = 0; i < tx_syms.size(); ++i) {
        err += std::norm(rx_syms[i] - tx_syms[i]);
        refp += std::norm(tx_syms[i]);
    }
    m.evm_db = (refp > 0.0 && err > 0.0) ? 10.0 * std::log10(err / refp) : -120.0;
    const double ber_for_q =
        m.bit_errors == 0 && m.bits_total > 0
            ? 0.5 / static_cast<double>(m.bits_total)
            : m.ber;
    m.q_db = q_from_ber(ber_for_q);
    return m;
}

double estimate_delay(const std::vector<double>& seq,
                      const std::vector<double>& ref) {
    if (seq.size() != ref.size() || seq.empty()) {
        throw std::invalid_argument("delay: sequences must match in length");
    }
    const std::size_t n = seq.size();
    std::vector<cplx> a(n), b(n);
    double ma = 0.0, mb = 0.0;
    for (double v : seq) ma += v;
    for (double v : ref) mb += v;
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = seq[i] - ma;
        b[i] = ref[i] - mb;
    }
    fft_inplace(a);
    fft_inplace(b);
    for (std::size_t k = 0; k < n; ++k) a[k] *= std::conj(b[k]);
    ifft_inplace(a);

    std::size_t peak = 0;
    double best = -1e300;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k].real() > best) {
            best = a[k].real();
            peak = k;
        }
    }
    // ambiguity check: strongest competitor away from the main lobe
    double side = -1e300;
    for (std::size_t k = 0; k < n; ++k) {
        long d = static_cast<long>(k) - static_cast<long>(peak);
        d = std::abs(d);
        d = std::min<long>(d, static_cast<long>(n) - d);
        if (d > 4) side = std::max(side, a[k].real());
    }
    if (!(best > 0.0) || side > 0.9 * best) {
        throw std::runtime_error("delay: ambiguous correlation peak");
    }

    const double ym = a[(peak + n - 1) % n].real();
    const double y0 = a[peak].real();
    const double yp = a[(peak + 1) % n].real();
    const double denom = ym - 2.0 * y0 + yp;
    const double frac = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    double d = static_cast<double>(peak) + frac;
    if (d > static_cast<double>(n) / 2.0) d -= static_cast<double>(n);
    return d;
}

std::vector<double> apply_fractional_delay(const std::vector<double>& seq,
                                           double delay_samples) {
    const std::size_t n = seq.size();
    if (n == 0) throw std::invalid_argument("delay: empty sequence");
    std::vector<cplx> spec(seq.begin(), seq.end());
    fft_inplace(spec);
    for (std::size_t k = 0; k < n; ++k) {
        double kf = static_cast<double>(k);
        if (kf > static_cast<double>(n) / 2.0) kf -= static_cast<double>(n);
        if (n % 2 == 0 && k == n / 2) {
            spec[k] *= std::cos(kPi * delay_samples);  // keep spectrum Hermitian
        } else {
            spec[k] *= std::polar(1.0, -2.0 * kPi * kf * delay_samples /
                                           static_cast<double>(n));
        }
    }
    ifft_inplace(spec);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = spec[i].real();
    return out;
}

std::vector<double> calibrate_branch_delay(BranchSet& branches,
                                           const std::vector<double>& probe) {
    if (branches.currents.empty()) {
        throw std::invalid_argument("calibrate: detect the branches first");
    }
    std::vector<double> delays;
    delays.reserve(branches.currents.size());
    for (auto& cur : branches.currents) {
        const double d = estimate_delay(cur, probe);
        delays.push_back(d);
        if (d != 0.0) cur = apply_fractional_delay(cur, -d);
    }
    return delays;
}

}  // namespace jsfr
