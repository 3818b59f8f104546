#include "jsfr/txchain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jsfr/rng.hpp"

namespace jsfr {

std::size_t FrameSpec::pilot_count() const {
    return static_cast<std::size_t>(
        std::llround(pilot_ratio * static_cast<double>(payload_len)));
}

namespace {

std::vector<cplx> qpsk_training(std::size_t n, RandomStream& rng) {
    std::vector<cplx> out(n);
    const double a = std::numbers::sqrt2 / 2.0;
    for (auto& s : out) {
        const std::uint64_t r = rng.next_u64();
        s = {r & 1 ? a : -a, r & 2 ? a : -a};
    }
    return out;
}

std::vector<std::uint8_t> random_bits(std::size_t n, RandomStream& rng) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    return out;
}

}  // namespace

Frame generate_frame(const FrameSpec& spec, std::uint64_t seed) {
    bits_per_symbol(spec.qam_order);  // validates the order
    if (spec.pilot_count() > spec.payload_len) {
        throw std::invalid_argument("frame: pilot_ratio too large");
    }

    Frame f;
    f.spec = spec;

    RandomStream train_rng(seed, "train");
    f.train_x = qpsk_training(spec.train_len, train_rng);
    f.train_y = qpsk_training(spec.train_len, train_rng);

    const std::size_t np = spec.pilot_count();
    f.pilot_idx.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        f.pilot_idx[k] = k * spec.payload_len / (np == 0 ? 1 : np);
    }
    RandomStream pilot_rng(seed, "pilot");
    f.pilot_x.resize(np);
    f.pilot_y.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        const std::uint64_t r = pilot_rng.next_u64();
        f.pilot_x[k] = corner_point(spec.qam_order, r & 1, r & 2);
        f.pilot_y[k] = corner_point(spec.qam_order, r & 4, r & 8);
    }

    const unsigned nb = bits_per_symbol(spec.qam_order);
    RandomStream bx_rng(seed, "bits_x");
    RandomStream by_rng(seed, "bits_y");
    f.bits_x = random_bits(spec.data_count() * nb, bx_rng);
    f.bits_y = random_bits(spec.data_count() * nb, by_rng);
    const auto data_x = map_bits(spec.qam_order, f.bits_x);
    const auto data_y = map_bits(spec.qam_order, f.bits_y);

    f.sym_x.reserve(spec.total_len());
    f.sym_y.reserve(spec.total_len());
    f.sym_x.insert(f.sym_x.end(), f.train_x.begin(), f.train_x.end());
    f.sym_y.insert(f.sym_y.end(), f.train_y.begin(), f.train_y.end());
    std::size_t pk = 0, dk = 0;
    for (std::size_t i = 0; i < spec.payload_len; ++i) {
        if (pk < np && f.pilot_idx[pk] == i) {
            f.sym_x.push_back(f.pilot_x[pk]);
            f.sym_y.push_back(f.pilot_y[pk]);
            ++pk;
        } else {
            f.sym_x.push_back(data_x[dk]);
            f.sym_y.push_back(data_y[dk]);
            ++dk;
        }
    }
    return f;
}

namespace {

std::vector<cplx> shape(const std::vector<cplx>& syms, const RrcSpec& rrc) {
    std::vector<cplx> up(syms.size() * static_cast<std::size_t>(rrc.sps), 0.0);
    for (std::size_t i = 0; i < syms.size(); ++i) {
        up[i * static_cast<std::size_t>(rrc.sps)] = syms[i];
    }
    return filter_circular(up, rrc_taps(rrc));
}

}  // namespace

JonesSignal modulate(const Frame& frame, const RrcSpec& rrc) {
    if (rrc.sps < 4) throw std::invalid_argument("modulate: need sps >= 4");
    const double rate = frame.spec.baud * rrc.sps;
    return make_jones(make_signal(shape(frame.sym_x, rrc), rate),
                      make_signal(shape(frame.sym_y, rrc), rate));
}

JonesSignal insert_carrier(const JonesSignal& sig, const CarrierSpec& carrier) {
    const double rate = sig.sample_rate();
    if (std::abs(carrier.offset) >= rate / 2) {
        throw std::invalid_argument("insert_carrier: tone offset would alias");
    }
    const double f = snap_to_bin(carrier.offset, sig.size(), rate);
    const double cspr = std::pow(10.0, carrier.cspr_db / 10.0);
    const double psig = (power(sig.x) + power(sig.y)) / 2.0;
    const double amp = std::sqrt(cspr * psig);

    const double c = std::cos(carrier.xi), s = std::sin(carrier.xi);
    JonesSignal out = sig;
    const double w = 2.0 * std::numbers::pi * f / rate;
    for (std::size_t n = 0; n < sig.size(); ++n) {
        const cplx tone = amp * std::polar(1.0, w * static_cast<double>(n));
        const cplx gx = c * sig.x.samples[n] - s * sig.y.samples[n];
        const cplx gy = s * sig.x.samples[n] + c * sig.y.samples[n];
        out.x.samples[n] = tone + gx;
        out.y.samples[n] = tone + gy;
    }
    return out;
}

double default_carrier_offset(double baud, double rolloff, double guard_frac) {
    return -(baud * (1.0 + rolloff) / 2.0 + guard_frac * baud);
}

double compute_net_rate(const FrameSpec& spec, double fec_overhead, int n_pol) {
    if (fec_overhead < 0) throw std::invalid_argument("net_rate: overhead < 0");
    const double bits = bits_per_symbol(spec.qam_order);
    const double data = static_cast<double>(spec.data_count());
    const double total = static_cast<double>(spec.total_len());
    return spec.baud * bits * n_pol / (1.0 + fec_overhead) * data / total;
}

}  // namespace jsfr
