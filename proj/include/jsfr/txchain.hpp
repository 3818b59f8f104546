#pragma once

#include <cstdint>
#include <vector>

#include "jsfr/qam.hpp"
#include "jsfr/rrc.hpp"
#include "jsfr/signal.hpp"

namespace jsfr {

struct FrameSpec {
    unsigned qam_order = 16;
    std::size_t train_len = 512;
    std::size_t payload_len = 22400;
    double pilot_ratio = 0.004;
    double baud = 56e9;

    std::size_t pilot_count() const;
    std::size_t data_count() const { return payload_len - pilot_count(); }
    std::size_t total_len() const { return train_len + payload_len; }
};

struct CarrierSpec {
    double cspr_db = 12.0;  // total carrier power over total signal power
    double offset = 0.0;    // Hz, tone position relative to signal band center
    double xi = 0.0;        // radians, carrier SOP rotation
};

/// One generated frame: training head plus payload, with pilots embedded at
/// evenly spaced payload positions. Bit vectors cover data symbols only.
struct Frame {
    FrameSpec spec;
    std::vector<cplx> sym_x, sym_y;            // train + payload
    std::vector<cplx> train_x, train_y;        // QPSK, deterministic per seed
    std::vector<std::size_t> pilot_idx;        // payload-relative
    std::vector<cplx> pilot_x, pilot_y;
    std::vector<std::uint8_t> bits_x, bits_y;  // data payload bits
};

Frame generate_frame(const FrameSpec& spec, std::uint64_t seed);

/// Upsample and RRC-shape both polarizations (block-periodic processing);
/// output rate is baud * rrc.sps.
JonesSignal modulate(const Frame& frame, const RrcSpec& rrc);

/// Add the carrier tone per the requested CSPR and carrier SOP angle xi.
/// The signal pair is rotated by xi and the same tone lands on both
/// polarizations, i.e. the carrier stays at 45 degrees. The tone frequency
/// snaps to the nearest FFT bin of the block.
JonesSignal insert_carrier(const JonesSignal& sig, const CarrierSpec& carrier);

/// Tone position for edge-carrier SSB operation:
/// -(baud*(1+rolloff)/2 + guard_frac*baud).
double default_carrier_offset(double baud, double rolloff,
                              double guard_frac = 0.01);

/// Net bit rate in bit/s after FEC and frame overheads.
double compute_net_rate(const FrameSpec& spec, double fec_overhead,
                        int n_pol = 2);

}  // namespace jsfr
