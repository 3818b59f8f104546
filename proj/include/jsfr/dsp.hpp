#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jsfr/frontend.hpp"
#include "jsfr/signal.hpp"

namespace jsfr {

struct MimoSpec {
    enum class Mode { TrainThenFreeze, TrainThenDd };
    int n_inputs = 4;
    int taps = 51;  // odd, T/2-spaced
    std::size_t train_len = 512;
    double rls_lambda = 0.999;
    double rls_delta = 0.01;  // inverse-correlation init: (1/delta) * I
    Mode mode = Mode::TrainThenFreeze;
};

struct CpeSpec {
    double pilot_ratio = 0.004;
    int bps_angles = 32;  // test angles across the pi/2 ambiguity
    int bps_window = 64;  // symbols
};

struct Metrics {
    double ber = 0.0;
    double evm_db = 0.0;
    double q_db = 0.0;
    std::vector<double> per_branch_cspr_db;
    bool converged = true;
    std::size_t bit_errors = 0;
    std::size_t bits_total = 0;
};

/// 4th-power frequency-offset estimate: argmax bin of |FFT(s^4)| divided by
/// four. Resolution is rate / (4N). A finite max_abs_offset restricts the
/// acquisition range.
double estimate_freq_offset(const ComplexSignal& field,
                            double max_abs_offset = 0.0);

struct FoeEstimate {
    double offset = 0.0;
    double prominence_db = 0.0;  // peak over the median 4th-power bin
};

/// Offset estimate plus the peak's prominence, for gating unreliable
/// acquisitions (the 4th-power line strength depends on the constellation
/// mix reaching the estimator).
FoeEstimate estimate_freq_offset_detail(const ComplexSignal& field,
                                        double max_abs_offset = 0.0);

/// Exact inverse of the channel's dispersion all-pass:
/// H(w) = exp(-j beta2 w^2 L / 2).
ComplexSignal cd_compensate(const ComplexSignal& field, double fiber_km,
                            double beta2);

struct SyncResult {
    std::size_t offset = 0;       // cyclic sample offset of the frame start
    double peak_ratio_db = 0.0;   // peak over strongest sidelobe
};

/// Cyclic cross-correlation sync against one or more known training
/// waveforms; the metric sums |corr|^2 over references so it stays
/// SOP-invariant on branch mixtures. Throws if the peak clears the
/// sidelobes by less than 3 dB.
SyncResult synchronize(const ComplexSignal& field,
                       const std::vector<const ComplexSignal*>& refs);

struct MimoResult {
    std::vector<cplx> out_x, out_y;  // 1 sample/symbol
    bool converged = true;
    double train_mse_first = 0.0;  // mean over the first 100 training symbols
    double train_mse_last = 0.0;   // mean over the last 100
};

/// N-input fractionally spaced (T/2) complex FFE bank trained by RLS on the
/// frame's training head. Inputs are 2-SPS block-periodic captures; symbol n
/// of the output reads the input window centered at sample
/// sync_offset + 2n. For a single reference stream the second output is
/// left empty.
MimoResult mimo_equalize(const std::vector<const ComplexSignal*>& inputs,
                         const std::vector<cplx>& ref_x,
                         const std::vector<cplx>& ref_y,
                         std::size_t total_symbols, std::size_t sync_offset,
                         const MimoSpec& spec, unsigned qam_order);

/// Pilot-aided coarse phase interpolation followed by blind phase search
/// within the residual pi/2 ambiguity. Pilot indices address the full
/// symbol stream.
std::vector<cplx> carrier_phase_estimate(const std::vector<cplx>& stream,
                                         const std::vector<std::size_t>& pilot_idx,
                                         const std::vector<cplx>& pilot_ref,
                                         const CpeSpec& spec,
                                         unsigned qam_order);

/// BER / EVM / Q over the data payload. Training and pilots must already be
/// excluded by the caller.
Metrics compute_metrics(const std::vector<std::uint8_t>& rx_bits,
                        const std::vector<std::uint8_t>& tx_bits,
                        const std::vector<cplx>& rx_syms,
                        const std::vector<cplx>& tx_syms);

/// Fractional delay of `seq` relative to `ref` from the parabola-refined
/// cyclic correlation peak. Both sequences must have equal length.
double estimate_delay(const std::vector<double>& seq,
                      const std::vector<double>& ref);

std::vector<double> apply_fractional_delay(const std::vector<double>& seq,
                                           double delay_samples);

/// Measure per-branch delays against a probe current and undo them in
/// place. Returns the measured delays in samples.
std::vector<double> calibrate_branch_delay(BranchSet& branches,
                                           const std::vector<double>& probe);

double q_from_ber(double ber);

}  // namespace jsfr
