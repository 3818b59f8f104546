#include "jsfr/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jsfr/fft.hpp"

namespace jsfr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0;  // m/s

Jones2 matmul(const Jones2& a, const Jones2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Jones2 inverse_unitary(const Jones2& m) {
    // conjugate transpose
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

}  // namespace

double beta2_from_dispersion(double d_ps_nm_km, double lambda_nm) {
    const double d = d_ps_nm_km * 1e-6;      // s/m^2
    const double lambda = lambda_nm * 1e-9;  // m
    return -d * lambda * lambda / (2.0 * kPi * kSpeedOfLight);
}

Jones2 sop_matrix(const SopState& sop) {
    const double ca = std::cos(sop.alpha), sa = std::sin(sop.alpha);
    return {ca * std::polar(1.0, sop.theta), cplx(-sa, 0.0), cplx(sa, 0.0),
            ca * std::polar(1.0, -sop.theta)};
}

JonesSignal apply_jones(const JonesSignal& sig, const Jones2& m) {
    JonesSignal out = sig;
    for (std::size_t n = 0; n < sig.size(); ++n) {
        const cplx x = sig.x.samples[n], y = sig.y.samples[n];
        out.x.samples[n] = m[0] * x + m[1] * y;
        out.y.samples[n] = m[2] * x + m[3] * y;
    }
    return out;
}

JonesSignal apply_rotation(const JonesSignal& sig, const SopState& sop) {
    return apply_jones(sig, sop_matrix(sop));
}

JonesSignal apply_cd(const JonesSignal& sig, double fiber_km, double beta2) {
    if (fiber_km == 0.0 || beta2 == 0.0) return sig;
    const double length_m = fiber_km * 1e3;
    const std::size_t n = sig.size();
    const double rate = sig.sample_rate();

    JonesSignal out = sig;
    for (auto* pol : {&out.x, &out.y}) {
        fft_inplace(pol->samples);
        for (std::size_t k = 0; k < n; ++k) {
            const double w = 2.0 * kPi * bin_frequency(k, n, rate);
            pol->samples[k] *= std::polar(1.0, beta2 * w * w * length_m / 2.0);
        }
        ifft_inplace(pol->samples);
    }
    return out;
}

PmdEmulator PmdEmulator::draw(int n_sections, double mean_total_dgd_s,
                              RandomStream& rng) {
    if (n_sections < 1) throw std::invalid_argument("pmd: need >= 1 section");
    PmdEmulator em;
    em.sections.resize(static_cast<std::size_t>(n_sections));
    // Per-component sigma such that |sum of section DGD vectors| has the
    // requested Maxwellian mean 2*sqrt(2/pi)*sigma*sqrt(N).
    const double sigma = mean_total_dgd_s /
                         (2.0 * std::sqrt(2.0 / kPi) *
                          std::sqrt(static_cast<double>(n_sections)));
    for (auto& sec : em.sections) {
        const double g1 = rng.gaussian(), g2 = rng.gaussian(), g3 = rng.gaussian();
        sec.tau = sigma * std::sqrt(g1 * g1 + g2 * g2 + g3 * g3);
        // Haar-uniform SU(2) rotation from a normalized quaternion
        double q[4];
        double norm = 0.0;
        for (auto& qi : q) {
            qi = rng.gaussian();
            norm += qi * qi;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) norm = 1.0;
        for (auto& qi : q) qi /= norm;
        sec.rotation = {cplx(q[0], q[1]), cplx(q[2], q[3]), cplx(-q[2], q[3]),
                        cplx(q[0], -q[1])};
    }
    return em;
}

Jones2 PmdEmulator::jones_at(double freq) const {
    Jones2 total{1.0, 0.0, 0.0, 1.0};
    for (const auto& sec : sections) {
        const cplx d = std::polar(1.0, -kPi * freq * sec.tau);
        const Jones2 biref{d, 0.0, 0.0, std::conj(d)};
        total = matmul(biref, matmul(sec.rotation, total));
    }
    return total;
}

double PmdEmulator::dgd_at(double freq, double df) const {
    const Jones2 hi = jones_at(freq + df / 2.0);
    const Jones2 lo = jones_at(freq - df / 2.0);
    const Jones2 g = matmul(hi, inverse_unitary(lo));
    // eigenvalues of a 2x2 matrix
    const cplx tr = g[0] + g[3];
    const cplx det = g[0] * g[3] - g[1] * g[2];
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = (tr + disc) / 2.0;
    const cplx l2 = (tr - disc) / 2.0;
    const double dphi = std::abs(std::arg(l1 / l2));
    return dphi / (2.0 * kPi * df);
}

void PmdEmulator::rescale_to_dgd(double target_dgd_s, double probe_df) {
    if (target_dgd_s == 0.0) {
        for (auto& sec : sections) sec.tau = 0.0;
        return;
    }
    const double current = dgd_at(0.0, probe_df);
    if (current <= 0.0) throw std::runtime_error("pmd: degenerate draw, cannot rescale");
    const double scale = target_dgd_s / current;
    for (auto& sec : sections) sec.tau *= scale;
}

JonesSignal apply_pmd(const JonesSignal& sig, const PmdEmulator& em) {
    const std::size_t n = sig.size();
    const double rate = sig.sample_rate();
    std::vector<cplx> fx = sig.x.samples, fy = sig.y.samples;
    fft_inplace(fx);
    fft_inplace(fy);
    for (const auto& sec : em.sections) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx x = sec.rotation[0] * fx[k] + sec.rotation[1] * fy[k];
            const cplx y = sec.rotation[2] * fx[k] + sec.rotation[3] * fy[k];
            // delays X by +tau/2 and Y by -tau/2
            const cplx d = std::polar(1.0, -kPi * bin_frequency(k, n, rate) * sec.tau);
            fx[k] = x * d;
            fy[k] = y * std::conj(d);
        }
    }
    ifft_inplace(fx);
    ifft_inplace(fy);
    JonesSignal out = sig;
    out.x.samples = std::move(fx);
    out.y.samples = std::move(fy);
    return out;
}

JonesSignal apply_pmd(const JonesSignal& sig, const LinkSpec& spec) {
    const double mean_dgd =
        spec.pmd_param * 1e-12 * std::sqrt(std::max(spec.fiber_km, 0.0));
    if (mean_dgd == 0.0) return sig;
    RandomStream rng(spec.seed, "pmd");
    return apply_pmd(sig, PmdEmulator::draw(spec.pmd_sections, mean_dgd, rng));
}

ComplexSignal optical_bandpass(const ComplexSignal& sig, double f_lo,
                               double f_hi) {
    if (f_lo >= f_hi) throw std::invalid_argument("bandpass: empty passband");
    ComplexSignal out = sig;
    fft_inplace(out.samples);
    const std::size_t n = out.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double f = bin_frequency(k, n, sig.sample_rate);
        if (f < f_lo || f > f_hi) out.samples[k] = 0.0;
    }
    ifft_inplace(out.samples);
    return out;
}

JonesSignal optical_bandpass(const JonesSignal& sig, double f_lo, double f_hi) {
    return JonesSignal{optical_bandpass(sig.x, f_lo, f_hi),
                       optical_bandpass(sig.y, f_lo, f_hi)};
}

JonesSignal load_ase(const JonesSignal& sig, std::optional<double> osnr_db,
                     RandomStream& rng, double ref_bw_hz,
                     double power_override) {
    if (!osnr_db) return sig;
    const double osnr = std::pow(10.0, *osnr_db / 10.0);
    const double ptot =
        power_override > 0.0 ? power_override : power(sig.x) + power(sig.y);
    const double n0 = ptot / (osnr * 2.0 * ref_bw_hz);  // W/Hz per polarization
    const double sigma = std::sqrt(n0 * sig.sample_rate());
    JonesSignal out = sig;
    for (std::size_t n = 0; n < sig.size(); ++n) {
        out.x.samples[n] += sigma * rng.cgaussian();
        out.y.samples[n] += sigma * rng.cgaussian();
    }
    return out;
}

}  // namespace jsfr
