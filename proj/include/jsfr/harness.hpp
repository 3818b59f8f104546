#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsfr/channel.hpp"
#include "jsfr/dsp.hpp"
#include "jsfr/frontend.hpp"
#include "jsfr/recovery.hpp"
#include "jsfr/txchain.hpp"

namespace jsfr {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// How the branch photocurrents are obtained before recovery.
///   direct:            one detector per branch
///   reconstruct_fourth: drop the last detector, rebuild its current from
///                       the other three
///   top2:              detect all branches, recover only the two with the
///                       highest measured CSPR (2x2 equalizer)
///   direct3:           the 3x3 coupler's three outputs, no reconstruction
///                      (carrier-boost operating mode)
enum class DetectorMode { Direct, ReconstructFourth, Top2, Direct3 };

const char* detector_mode_name(DetectorMode m);
DetectorMode detector_mode_from_name(const std::string& name);

struct FrontendConfig {
    Scheme scheme = Scheme::Coupler2x2;
    DetectorMode mode = DetectorMode::Direct;
    std::optional<double> electrical_snr_db;
};

struct SimConfig {
    int sps = 8;                  // generation / detection samples per symbol
    double guard_frac = 0.01;     // carrier guard band as a fraction of baud
    double freq_offset_hz = 0.0;  // residual laser offset, snapped to a bin
    bool sp_mode = false;         // single-polarization reference chain
    // receiver OBPF margin outside the occupied band, as a fraction of baud;
    // square-law detection folds any unfiltered ASE into the photocurrents
    double obpf_margin = 0.05;
};

struct SweepAxis {
    enum class Kind { Single, SopGrid, OsnrList, CsprList, DgdList, XiList };
    Kind kind = Kind::Single;

    // SopGrid
    int alpha_count = 1;
    int theta_count = 1;
    double alpha_start_deg = 0.0, alpha_stop_deg = 90.0;
    double theta_start_deg = 0.0, theta_stop_deg = 180.0;

    // list axes: OSNR dB / CSPR dB / DGD in symbol periods / xi degrees
    std::vector<double> values;

    // optional SOP set crossed with a value list (worst-case scans)
    std::vector<std::array<double, 2>> sop_list_deg;
};

/// Named overrides evaluated side by side in one sweep (sp vs dp curves,
/// 1-tap vs 5-tap equalizers, boosted vs unboosted carrier, ...).
struct Variant {
    std::string name = "base";
    std::optional<bool> sp_mode;
    std::optional<int> mimo_taps;
    std::optional<double> cspr_db;
    std::optional<DetectorMode> detector_mode;
};

struct ExperimentConfig {
    int schema_version = 1;
    FrameSpec frame;
    RrcSpec rrc;  // rolloff/span; generation sps comes from sim.sps
    CarrierSpec carrier{6.0, 0.0, 0.0};  // offset 0 = automatic edge placement
    SopState sop;
    LinkSpec link;
    // When set, the ASE level is derived from the total power the signal
    // would have at this CSPR instead of the actual one. Carrier-boost
    // comparisons raise the carrier alone (a VOA on the carrier path), so
    // the absolute noise must not move with the boost.
    std::optional<double> osnr_ref_cspr_db;
    FrontendConfig frontend;
    GrSpec gr;
    MimoSpec mimo;
    CpeSpec cpe;
    SimConfig sim;
    SweepAxis sweep;
    std::vector<Variant> variants;
    int trials_per_point = 1;
    std::uint64_t seed = 1;
};

/// One sweep point resolved to concrete channel conditions. Unset fields
/// fall back to the base config.
struct TrialPoint {
    SopState sop{};
    double xi = 0.0;
    std::optional<double> osnr_db;
    std::optional<double> cspr_db;
    std::optional<double> dgd_ui;  // first-order DGD target in symbol periods
};

/// Full tx -> channel -> front end -> recovery -> DSP pipeline for one
/// trial. Deterministic given (cfg, pt, seed); sync or convergence failures
/// come back flagged in the Metrics instead of throwing.
Metrics run_trial(const ExperimentConfig& cfg, const TrialPoint& pt,
                  std::uint64_t seed);

struct SweepRow {
    std::size_t point_index = 0;
    std::string variant;
    int trial = 0;
    std::uint64_t seed = 0;
    double alpha_deg = 0.0, theta_deg = 0.0, xi_deg = 0.0;
    std::optional<double> osnr_db;
    double cspr_db = 0.0;
    double dgd_ui = 0.0;
    Metrics metrics;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

std::vector<std::pair<TrialPoint, std::size_t>> sweep_points(
    const ExperimentConfig& cfg);

/// Cartesian product of variants x points x trials, executed on `workers`
/// threads (0 = hardware concurrency). Row order and values do not depend
/// on the worker count.
SweepResult sweep(const ExperimentConfig& cfg, int workers = 0);

struct IdentityReport {
    bool pass = true;
    double worst_residual = 0.0;
    std::vector<std::string> lines;
};

/// Batch certification of the closed-form CSPR geometry, the photocurrent
/// reconstruction identities, and the branch-selection worked examples.
IdentityReport verify_identities();

std::string to_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string dump_config(const ExperimentConfig& cfg);

std::vector<std::string> preset_names();
/// Resolves a preset name to its committed config file, searching
/// $JSFR_CONFIG_DIR, ./configs and the source tree.
std::string preset_path(const std::string& name);

}  // namespace jsfr
