#include "jsfr/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "jsfr/fft.hpp"
#include "jsfr/hilbert.hpp"
#include "jsfr/resample.hpp"

namespace jsfr {

std::array<double, 4> cspr_2x2(double alpha, double theta) {
    const double k = 2.0 * std::cos(alpha) * std::sin(alpha) * std::cos(theta);
    const double c2 = 2.0 * std::cos(alpha) * std::cos(alpha) *
                      std::cos(theta) * std::cos(theta);
    return {1.0 - k, 1.0 + k, c2, 2.0 - c2};
}

std::array<double, 4> cspr_hybrid(double alpha, double theta) {
    const double ca2 = std::cos(alpha) * std::cos(alpha);
    const double c2 = 2.0 * ca2 * std::cos(theta) * std::cos(theta);
    const double m = 2.0 * ca2 * std::cos(theta) * std::sin(theta);
    return {c2, 2.0 - c2, 1.0 + m, 1.0 - m};
}

std::array<double, 3> cspr_3x3(double alpha, double theta) {
    const double ca2 = std::cos(alpha) * std::cos(alpha);
    const double sa2 = std::sin(alpha) * std::sin(alpha);
    const cplx z = ca2 * std::polar(1.0, 2.0 * theta) - sa2;
    const cplx ab = CouplerConstants::a() * std::conj(CouplerConstants::b());
    const double mid = 2.0 * ca2 * std::cos(theta) * std::cos(theta);
    return {1.0 + 3.0 * (ab * z).real(), mid,
            1.0 + 3.0 * (std::conj(ab) * z).real()};
}

CsprProfile cspr_profile(Scheme scheme, double alpha, double theta,
                         double c_req_db) {
    CsprProfile p;
    p.scheme = scheme;
    p.c_req_db = c_req_db;
    switch (scheme) {
        case Scheme::PbsBaseline: {
            const auto v = cspr_2x2(alpha, theta);
            p.labels = {"X", "Y"};
            p.values = {v[0], v[1]};
            break;
        }
        case Scheme::Coupler2x2: {
            const auto v = cspr_2x2(alpha, theta);
            p.labels = {"X", "Y", "X+Y", "X-Y"};
            p.values.assign(v.begin(), v.end());
            break;
        }
        case Scheme::Hybrid90: {
            const auto v = cspr_hybrid(alpha, theta);
            p.labels = {"X+Y", "X-Y", "X+jY", "X-jY"};
            p.values.assign(v.begin(), v.end());
            break;
        }
        case Scheme::Coupler3x3: {
            const auto v = cspr_3x3(alpha, theta);
            p.labels = {"aX+bY", "bX+bY", "bX+aY"};
            p.values.assign(v.begin(), v.end());
            break;
        }
    }
    return p;
}

double second_max(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("second_max: need at least two values");
    }
    double best = -std::numeric_limits<double>::infinity();
    double second = best;
    for (double v : values) {
        if (v > best) {
            second = best;
            best = v;
        } else if (v > second) {
            second = v;
        }
    }
    return second;
}

std::vector<std::string> select_branches(const CsprProfile& profile,
                                         SelectMode mode) {
    if (profile.labels.size() != profile.values.size()) {
        throw std::invalid_argument("select_branches: malformed profile");
    }
    if (mode == SelectMode::All) return profile.labels;

    std::vector<std::size_t> order(profile.values.size());
    std::iota(order.begin(), order.end(), 0);
    // stable on label order, so ties resolve to the earlier label
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return profile.values[a] > profile.values[b];
    });
    std::vector<std::size_t> top = {order[0], order[1]};
    std::sort(top.begin(), top.end());  // report in fixed label order
    return {profile.labels[top[0]], profile.labels[top[1]]};
}

ComplexSignal kkr_recover(const std::vector<double>& current, const GrSpec& gr,
                          double carrier_offset, double rate, double baud) {
    if (current.empty()) throw std::invalid_argument("kkr: empty current");
    if (gr.working_sps < 4) throw std::invalid_argument("kkr: working_sps < 4");

    double mean = 0.0;
    for (double v : current) mean += v;
    mean /= static_cast<double>(current.size());
    if (mean <= 0.0) throw std::invalid_argument("kkr: all-zero current");

    ComplexSignal cur;
    cur.sample_rate = rate;
    cur.samples.assign(current.begin(), current.end());
    const double working_rate = baud * gr.working_sps;
    if (working_rate != rate) cur = resample(cur, working_rate);

    const double floor_val = 1e-12 * mean;
    const std::size_t n = cur.size();
    std::vector<double> intens(n), half_log(n);
    for (std::size_t i = 0; i < n; ++i) {
        // resampling can ring slightly below zero around sharp nulls
        intens[i] = std::max(cur.samples[i].real(), floor_val);
        half_log[i] = 0.5 * std::log(intens[i]);
    }
    const auto phase = hilbert_phase(half_log);

    ComplexSignal field;
    field.sample_rate = working_rate;
    field.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        field.samples[i] = std::polar(std::sqrt(intens[i]), phase[i]);
    }
    return frequency_shift(field, -carrier_offset);
}

namespace {

// Windowed periodogram ratio: tone bins around f_tone over the rest.
double spectral_tone_ratio(const std::vector<cplx>& x, double rate,
                           double f_tone) {
    const std::size_t n = x.size();
    std::vector<cplx> spec(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
        spec[i] = x[i] * w;
    }
    fft_inplace(spec);

    // search the strongest bin near the expected tone position
    const long k0 = static_cast<long>(
        std::llround(f_tone / rate * static_cast<double>(n)));
    const long search = std::max<long>(4, static_cast<long>(n) / 50);
    long peak = 0;
    double peak_mag = -1.0;
    for (long d = -search; d <= search; ++d) {
        const std::size_t k =
            static_cast<std::size_t>(((k0 + d) % static_cast<long>(n) + n) % n);
        const double m = std::norm(spec[k]);
        if (m > peak_mag) {
            peak_mag = m;
            peak = static_cast<long>(k);
        }
    }

    double tone = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += std::norm(spec[k]);
    const long halo = 4;  // Hann leakage is confined to a few bins
    for (long d = -halo; d <= halo; ++d) {
        const std::size_t k =
            static_cast<std::size_t>(((peak + d) % static_cast<long>(n) + n) % n);
        tone += std::norm(spec[k]);
    }
    const double rest = total - tone;
    if (rest <= 0.0) return 1e12;
    return tone / rest;
}

double clamp_db(double ratio) {
    const double db = 10.0 * std::log10(std::max(ratio, 1e-30));
    return std::clamp(db, -60.0, 60.0);
}

}  // namespace

double estimate_cspr(const ComplexSignal& field, double carrier_offset) {
    if (field.samples.empty()) throw std::invalid_argument("estimate_cspr: empty");
    return clamp_db(
        spectral_tone_ratio(field.samples, field.sample_rate, carrier_offset));
}

double estimate_cspr(const std::vector<double>& current, double rate) {
    if (current.empty()) throw std::invalid_argument("estimate_cspr: empty");
    std::vector<cplx> x(current.begin(), current.end());
    const double r = spectral_tone_ratio(x, rate, 0.0);
    // invert R = (rho+1)^2 / (2 rho + 1)
    const double disc = r * (r - 1.0);
    if (disc <= 0.0) return -60.0;
    const double rho = (r - 1.0) + std::sqrt(disc);
    return clamp_db(rho);
}

}  // namespace jsfr
