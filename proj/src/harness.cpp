#include "jsfr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "jsfr/fft.hpp"
#include "jsfr/qam.hpp"
#include "jsfr/resample.hpp"

namespace jsfr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

}  // namespace

const char* detector_mode_name(DetectorMode m) {
    switch (m) {
        case DetectorMode::Direct: return "direct";
        case DetectorMode::ReconstructFourth: return "reconstruct_fourth";
        case DetectorMode::Top2: return "top2";
        case DetectorMode::Direct3: return "direct3";
    }
    return "?";
}

DetectorMode detector_mode_from_name(const std::string& name) {
    if (name == "direct") return DetectorMode::Direct;
    if (name == "reconstruct_fourth") return DetectorMode::ReconstructFourth;
    if (name == "top2") return DetectorMode::Top2;
    if (name == "direct3") return DetectorMode::Direct3;
    throw ConfigError("unknown detector mode: " + name);
}

namespace {

// Shaped training waveform at 2 SPS, used as the sync reference.
ComplexSignal training_reference(const std::vector<cplx>& train,
                                 const RrcSpec& rrc, double baud) {
    RrcSpec r2 = rrc;
    r2.sps = 2;
    std::vector<cplx> up(train.size() * 2, 0.0);
    for (std::size_t i = 0; i < train.size(); ++i) up[2 * i] = train[i];
    return make_signal(filter_same(up, rrc_taps(r2)), 2.0 * baud);
}

struct ChainOutput {
    std::vector<cplx> stream;  // symbols at 1 SPS, train + payload
};

// Shared receiver tail: per-branch KKR -> carrier removal -> 2 SPS ->
// common FOE -> CDC -> matched filter -> sync -> MIMO -> CPE.
Metrics demodulate(const ExperimentConfig& cfg, const Frame& frame,
                   const std::vector<std::vector<double>>& currents,
                   double detect_rate, double carrier_freq, double fiber_km,
                   double beta2) {
    const double baud = cfg.frame.baud;
    Metrics metrics;

    std::vector<double> cspr_est;
    cspr_est.reserve(currents.size());
    for (const auto& cur : currents) {
        cspr_est.push_back(estimate_cspr(cur, detect_rate));
    }
    metrics.per_branch_cspr_db = cspr_est;

    std::vector<ComplexSignal> fields;
    fields.reserve(currents.size());
    for (const auto& cur : currents) {
        ComplexSignal f = kkr_recover(cur, cfg.gr, carrier_freq, detect_rate, baud);
        remove_tone(f, carrier_freq);
        fields.push_back(resample(f, 2.0 * baud));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < cspr_est.size(); ++i) {
        if (cspr_est[i] > cspr_est[best]) best = i;
    }
    // The 4th-power line strength varies with the branch mixing and sinks
    // into the noise floor at low OSNR, so estimates are gated on peak
    // prominence and combined across branches by median. No usable line
    // means no correction.
    std::vector<double> offsets;
    offsets.reserve(fields.size());
    for (const auto& f : fields) {
        const FoeEstimate est = estimate_freq_offset_detail(f, 0.05 * baud);
        if (est.prominence_db >= 15.0) offsets.push_back(est.offset);
    }
    double df = 0.0;
    if (!offsets.empty()) {
        std::sort(offsets.begin(), offsets.end());
        df = offsets.size() % 2 == 1
                 ? offsets[offsets.size() / 2]
                 : 0.5 * (offsets[offsets.size() / 2 - 1] +
                          offsets[offsets.size() / 2]);
    }
    const double resolution = fields[best].sample_rate /
                              (4.0 * static_cast<double>(fields[best].size()));
    for (auto& f : fields) {
        if (std::abs(df) > resolution) f = frequency_shift(f, df);
        if (fiber_km > 0.0) f = cd_compensate(f, fiber_km, beta2);
        RrcSpec mf = cfg.rrc;
        mf.sps = 2;
        f.samples = filter_circular(f.samples, rrc_taps(mf));
    }

    const auto ref_x = training_reference(frame.train_x, cfg.rrc, baud);
    const auto ref_y = training_reference(frame.train_y, cfg.rrc, baud);
    std::vector<const ComplexSignal*> refs = {&ref_x};
    if (!cfg.sim.sp_mode) refs.push_back(&ref_y);
    const SyncResult sync = synchronize(fields[best], refs);

    MimoSpec mimo = cfg.mimo;
    mimo.n_inputs = static_cast<int>(fields.size());
    std::vector<const ComplexSignal*> inputs;
    inputs.reserve(fields.size());
    for (const auto& f : fields) inputs.push_back(&f);
    const std::vector<cplx> empty;
    const MimoResult eq = mimo_equalize(
        inputs, frame.sym_x, cfg.sim.sp_mode ? empty : frame.sym_y,
        cfg.frame.total_len(), sync.offset, mimo, cfg.frame.qam_order);
    metrics.converged = eq.converged;

    // phase tracking runs on the payload region only: the QPSK training
    // head would mislead a 16-QAM blind phase search
    const std::size_t train = cfg.frame.train_len;
    auto payload_of = [train](const std::vector<cplx>& stream) {
        return std::vector<cplx>(stream.begin() + static_cast<long>(train),
                                 stream.end());
    };
    const auto out_x = carrier_phase_estimate(payload_of(eq.out_x),
                                              frame.pilot_idx, frame.pilot_x,
                                              cfg.cpe, cfg.frame.qam_order);
    std::vector<cplx> out_y;
    if (!cfg.sim.sp_mode) {
        out_y = carrier_phase_estimate(payload_of(eq.out_y), frame.pilot_idx,
                                       frame.pilot_y, cfg.cpe,
                                       cfg.frame.qam_order);
    }

    // decide the data payload, skipping pilots
    const unsigned order = cfg.frame.qam_order;
    const unsigned nb = bits_per_symbol(order);
    std::vector<cplx> rx_syms, tx_syms;
    std::vector<std::uint8_t> rx_bits, tx_bits;
    const std::size_t streams = cfg.sim.sp_mode ? 1 : 2;
    rx_syms.reserve(frame.spec.data_count() * streams);
    std::size_t pk = 0;
    std::vector<std::size_t> data_pos;  // payload-relative
    data_pos.reserve(frame.spec.data_count());
    for (std::size_t i = 0; i < cfg.frame.payload_len; ++i) {
        if (pk < frame.pilot_idx.size() && frame.pilot_idx[pk] == i) {
            ++pk;
            continue;
        }
        data_pos.push_back(i);
    }
    auto collect = [&](const std::vector<cplx>& stream,
                       const std::vector<cplx>& ref_syms,
                       const std::vector<std::uint8_t>& ref_bits) {
        std::vector<std::uint8_t> bits(nb);
        for (std::size_t d = 0; d < data_pos.size(); ++d) {
            const cplx s = stream[data_pos[d]];
            rx_syms.push_back(s);
            tx_syms.push_back(ref_syms[train + data_pos[d]]);
            demap_symbol(order, s, bits.data());
            rx_bits.insert(rx_bits.end(), bits.begin(), bits.end());
            tx_bits.insert(tx_bits.end(), ref_bits.begin() + d * nb,
                           ref_bits.begin() + (d + 1) * nb);
        }
    };
    collect(out_x, frame.sym_x, frame.bits_x);
    if (!cfg.sim.sp_mode) collect(out_y, frame.sym_y, frame.bits_y);

    const Metrics counted = compute_metrics(rx_bits, tx_bits, rx_syms, tx_syms);
    metrics.ber = counted.ber;
    metrics.evm_db = counted.evm_db;
    metrics.q_db = counted.q_db;
    metrics.bit_errors = counted.bit_errors;
    metrics.bits_total = counted.bits_total;
    return metrics;
}

Metrics failed_metrics(std::vector<double> cspr) {
    Metrics m;
    m.ber = 0.5;
    m.evm_db = 0.0;
    m.q_db = 0.0;
    m.converged = false;
    m.per_branch_cspr_db = std::move(cspr);
    return m;
}

std::vector<std::vector<double>> pick_currents(const ExperimentConfig& cfg,
                                               BranchSet& bs,
                                               double detect_rate) {
    switch (cfg.frontend.mode) {
        case DetectorMode::Direct:
            return bs.currents;
        case DetectorMode::Direct3:
            if (bs.scheme != Scheme::Coupler3x3) {
                throw ConfigError("direct3 detector needs the 3x3 coupler front end");
            }
            return bs.currents;
        case DetectorMode::ReconstructFourth: {
            switch (bs.scheme) {
                case Scheme::Coupler2x2: {
                    auto out = bs.currents;
                    out[3] = reconstruct_missing_2x2(bs.currents[0], bs.currents[1],
                                                     bs.currents[2]);
                    return out;
                }
                case Scheme::Hybrid90: {
                    auto out = bs.currents;
                    out[3] = reconstruct_missing_hybrid(
                        bs.currents[0], bs.currents[1], bs.currents[2]);
                    return out;
                }
                case Scheme::Coupler3x3: {
                    auto rec = reconstruct_from_3x3(bs.currents[0], bs.currents[1],
                                                    bs.currents[2]);
                    return {rec[0], rec[1], rec[2], rec[3]};
                }
                default:
                    throw ConfigError("reconstruction needs a coupler front end");
            }
        }
        case DetectorMode::Top2: {
            std::vector<double> est(bs.count());
            for (std::size_t i = 0; i < bs.count(); ++i) {
                est[i] = estimate_cspr(bs.currents[i], detect_rate);
            }
            std::size_t i0 = 0, i1 = 1;
            if (est[1] > est[0]) std::swap(i0, i1);
            for (std::size_t i = 2; i < est.size(); ++i) {
                if (est[i] > est[i0]) {
                    i1 = i0;
                    i0 = i;
                } else if (est[i] > est[i1]) {
                    i1 = i;
                }
            }
            if (i0 > i1) std::swap(i0, i1);
            return {bs.currents[i0], bs.currents[i1]};
        }
    }
    throw ConfigError("unhandled detector mode");
}

}  // namespace

Metrics run_trial(const ExperimentConfig& cfg, const TrialPoint& pt,
                  std::uint64_t seed) {
    FrameSpec fspec = cfg.frame;
    const double baud = fspec.baud;

    RrcSpec rrc = cfg.rrc;
    rrc.sps = cfg.sim.sps;

    const Frame frame = generate_frame(fspec, seed);
    JonesSignal tx = modulate(frame, rrc);
    const double rate = tx.sample_rate();
    const std::size_t n = tx.size();

    CarrierSpec carrier = cfg.carrier;
    if (pt.cspr_db) carrier.cspr_db = *pt.cspr_db;
    carrier.xi = pt.xi;
    if (carrier.offset == 0.0) {
        carrier.offset = default_carrier_offset(baud, rrc.rolloff, cfg.sim.guard_frac);
    }
    const double carrier_freq = snap_to_bin(carrier.offset, n, rate);

    if (cfg.sim.sp_mode) {
        // single-polarization reference chain: carrier + signal on X only
        ComplexSignal x = std::move(tx.x);
        const double amp = std::sqrt(std::pow(10.0, carrier.cspr_db / 10.0) * power(x));
        const double w = 2.0 * kPi * carrier_freq / rate;
        for (std::size_t i = 0; i < n; ++i) {
            x.samples[i] += amp * std::polar(1.0, w * static_cast<double>(i));
        }
        if (cfg.link.fiber_km > 0.0) {
            ComplexSignal tmp = x;
            fft_inplace(tmp.samples);
            for (std::size_t k = 0; k < n; ++k) {
                const double om = 2.0 * kPi * bin_frequency(k, n, rate);
                tmp.samples[k] *= std::polar(
                    1.0, cfg.link.beta2 * om * om * cfg.link.fiber_km * 1e3 / 2.0);
            }
            ifft_inplace(tmp.samples);
            x = std::move(tmp);
        }
        if (cfg.sim.freq_offset_hz != 0.0) {
            x = frequency_shift(x, snap_to_bin(cfg.sim.freq_offset_hz, n, rate));
        }
        const std::optional<double> osnr = pt.osnr_db ? pt.osnr_db : cfg.link.osnr_db;
        if (osnr) {
            RandomStream ase(seed, "ase");
            const double n0 = power(x) / (std::pow(10.0, *osnr / 10.0) * 2.0 * 12.5e9);
            const double sigma = std::sqrt(n0 * rate);
            for (auto& s : x.samples) s += sigma * ase.cgaussian();
            x = optical_bandpass(
                x, carrier_freq - cfg.sim.obpf_margin * baud,
                baud * (1.0 + rrc.rolloff) / 2.0 + cfg.sim.obpf_margin * baud);
        }
        std::vector<double> current(n);
        for (std::size_t i = 0; i < n; ++i) current[i] = std::norm(x.samples[i]);
        if (cfg.frontend.electrical_snr_db) {
            RandomStream det(seed, "detector");
            BranchSet one;
            one.scheme = Scheme::PbsBaseline;
            one.labels = {"X"};
            one.fields = {x};
            detect(one, cfg.frontend.electrical_snr_db, &det);
            current = std::move(one.currents[0]);
        }
        try {
            return demodulate(cfg, frame, {current}, rate, carrier_freq,
                              cfg.link.fiber_km, cfg.link.beta2);
        } catch (const std::runtime_error&) {
            return failed_metrics({estimate_cspr(current, rate)});
        }
    }

    JonesSignal sig = insert_carrier(tx, carrier);
    sig = apply_rotation(sig, pt.sop);
    if (cfg.link.fiber_km > 0.0 && cfg.link.beta2 != 0.0) {
        sig = apply_cd(sig, cfg.link.fiber_km, cfg.link.beta2);
    }
    if (pt.dgd_ui) {
        if (*pt.dgd_ui > 0.0) {
            RandomStream pmd_rng(seed, "pmd");
            auto em = PmdEmulator::draw(cfg.link.pmd_sections, *pt.dgd_ui / baud,
                                        pmd_rng);
            em.rescale_to_dgd(*pt.dgd_ui / baud, baud * 1e-4);
            sig = apply_pmd(sig, em);
        }
    } else if (cfg.link.pmd_param > 0.0 && cfg.link.fiber_km > 0.0) {
        RandomStream pmd_rng(seed, "pmd");
        const double mean_dgd =
            cfg.link.pmd_param * 1e-12 * std::sqrt(cfg.link.fiber_km);
        sig = apply_pmd(sig, PmdEmulator::draw(cfg.link.pmd_sections, mean_dgd,
                                               pmd_rng));
    }
    if (cfg.sim.freq_offset_hz != 0.0) {
        sig = frequency_shift(sig, snap_to_bin(cfg.sim.freq_offset_hz, n, rate));
    }
    {
        RandomStream ase(seed, "ase");
        const std::optional<double> osnr = pt.osnr_db ? pt.osnr_db : cfg.link.osnr_db;
        if (osnr) {
            double override_power = 0.0;
            if (cfg.osnr_ref_cspr_db) {
                const double cur = std::pow(10.0, carrier.cspr_db / 10.0);
                const double ref = std::pow(10.0, *cfg.osnr_ref_cspr_db / 10.0);
                override_power = (power(sig.x) + power(sig.y)) * (1.0 + ref) /
                                 (1.0 + cur);
            }
            sig = load_ase(sig, osnr, ase, 12.5e9, override_power);
            sig = optical_bandpass(
                sig, carrier_freq - cfg.sim.obpf_margin * baud,
                baud * (1.0 + rrc.rolloff) / 2.0 + cfg.sim.obpf_margin * baud);
        }
    }

    BranchSet bs = split_branches(sig, cfg.frontend.scheme);
    RandomStream det_rng(seed, "detector");
    detect(bs, cfg.frontend.electrical_snr_db, &det_rng);
    const auto currents = pick_currents(cfg, bs, rate);

    try {
        return demodulate(cfg, frame, currents, rate, carrier_freq,
                          cfg.link.fiber_km, cfg.link.beta2);
    } catch (const std::runtime_error&) {
        std::vector<double> est;
        for (const auto& cur : currents) est.push_back(estimate_cspr(cur, rate));
        return failed_metrics(est);
    }
}

std::vector<std::pair<TrialPoint, std::size_t>> sweep_points(
    const ExperimentConfig& cfg) {
    std::vector<std::pair<TrialPoint, std::size_t>> pts;
    const auto base_sop = cfg.sop;
    const double base_xi = cfg.carrier.xi;
    std::size_t index = 0;
    auto push = [&](TrialPoint p) { pts.emplace_back(p, index++); };

    switch (cfg.sweep.kind) {
        case SweepAxis::Kind::Single: {
            TrialPoint p;
            p.sop = base_sop;
            p.xi = base_xi;
            push(p);
            break;
        }
        case SweepAxis::Kind::SopGrid: {
            const int na = std::max(cfg.sweep.alpha_count, 1);
            const int nt = std::max(cfg.sweep.theta_count, 1);
            for (int i = 0; i < na; ++i) {
                const double a =
                    cfg.sweep.alpha_start_deg +
                    (na == 1 ? 0.0
                             : (cfg.sweep.alpha_stop_deg - cfg.sweep.alpha_start_deg) *
                                   i / (na - 1));
                for (int j = 0; j < nt; ++j) {
                    const double t =
                        cfg.sweep.theta_start_deg +
                        (nt == 1 ? 0.0
                                 : (cfg.sweep.theta_stop_deg - cfg.sweep.theta_start_deg) *
                                       j / (nt - 1));
                    TrialPoint p;
                    p.sop = {a * kDeg, t * kDeg};
                    p.xi = base_xi;
                    push(p);
                }
            }
            break;
        }
        case SweepAxis::Kind::OsnrList:
        case SweepAxis::Kind::CsprList:
        case SweepAxis::Kind::XiList: {
            if (cfg.sweep.values.empty()) throw ConfigError("sweep: empty value list");
            for (double v : cfg.sweep.values) {
                TrialPoint p;
                p.sop = base_sop;
                p.xi = base_xi;
                if (cfg.sweep.kind == SweepAxis::Kind::OsnrList) p.osnr_db = v;
                if (cfg.sweep.kind == SweepAxis::Kind::CsprList) p.cspr_db = v;
                if (cfg.sweep.kind == SweepAxis::Kind::XiList) p.xi = v * kDeg;
                push(p);
            }
            break;
        }
        case SweepAxis::Kind::DgdList: {
            if (cfg.sweep.values.empty()) throw ConfigError("sweep: empty value list");
            auto sops = cfg.sweep.sop_list_deg;
            if (sops.empty()) {
                sops.push_back({base_sop.alpha / kDeg, base_sop.theta / kDeg});
            }
            for (double v : cfg.sweep.values) {
                for (const auto& s : sops) {
                    TrialPoint p;
                    p.sop = {s[0] * kDeg, s[1] * kDeg};
                    p.xi = base_xi;
                    p.dgd_ui = v;
                    push(p);
                }
            }
            break;
        }
    }
    return pts;
}

namespace {

ExperimentConfig apply_variant(const ExperimentConfig& cfg, const Variant& v) {
    ExperimentConfig out = cfg;
    if (v.sp_mode) out.sim.sp_mode = *v.sp_mode;
    if (v.mimo_taps) out.mimo.taps = *v.mimo_taps;
    if (v.cspr_db) out.carrier.cspr_db = *v.cspr_db;
    if (v.detector_mode) out.frontend.mode = *v.detector_mode;
    return out;
}

}  // namespace

SweepResult sweep(const ExperimentConfig& cfg, int workers) {
    if (cfg.trials_per_point < 1) throw ConfigError("sweep: trials_per_point < 1");
    std::vector<Variant> variants = cfg.variants;
    if (variants.empty()) variants.push_back(Variant{});

    const auto points = sweep_points(cfg);

    struct Task {
        std::size_t row;
        std::size_t variant;
        std::size_t point;
        int trial;
    };
    std::vector<Task> tasks;
    SweepResult result;
    for (std::size_t v = 0; v < variants.size(); ++v) {
        const auto eff = apply_variant(cfg, variants[v]);
        for (const auto& [pt, p_ix] : points) {
            for (int t = 0; t < cfg.trials_per_point; ++t) {
                SweepRow row;
                row.point_index = p_ix;
                row.variant = variants[v].name;
                row.trial = t;
                row.seed = mix_seed(cfg.seed, v + 1, p_ix + 1,
                                    static_cast<std::uint64_t>(t) + 1);
                row.alpha_deg = pt.sop.alpha / kDeg;
                row.theta_deg = pt.sop.theta / kDeg;
                row.xi_deg = pt.xi / kDeg;
                row.osnr_db = pt.osnr_db ? pt.osnr_db : eff.link.osnr_db;
                row.cspr_db = pt.cspr_db ? *pt.cspr_db : eff.carrier.cspr_db;
                row.dgd_ui = pt.dgd_ui ? *pt.dgd_ui : 0.0;
                tasks.push_back({result.rows.size(), v, p_ix, t});
                result.rows.push_back(std::move(row));
            }
        }
    }

    std::vector<ExperimentConfig> effective;
    effective.reserve(variants.size());
    for (const auto& v : variants) effective.push_back(apply_variant(cfg, v));

    int n_workers = workers > 0
                        ? workers
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    n_workers = std::min<int>(n_workers, static_cast<int>(tasks.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            SweepRow& row = result.rows[task.row];
            const TrialPoint& pt = points[task.point].first;
            row.metrics = run_trial(effective[task.variant], pt, row.seed);
        }
    };
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return result;
}

namespace {

// Branch CSPR multiplier computed from the rotated branch-field
// coefficients themselves; independent of the closed forms it certifies.
double branch_multiplier_oracle(cplx wx, cplx wy, double alpha, double theta) {
    const cplx cx = std::cos(alpha) * std::polar(1.0, theta) - std::sin(alpha);
    const cplx cy = std::sin(alpha) + std::cos(alpha) * std::polar(1.0, -theta);
    const cplx sxx = std::cos(alpha) * std::polar(1.0, theta);
    const cplx sxy = -std::sin(alpha);
    const cplx syx = std::sin(alpha);
    const cplx syy = std::cos(alpha) * std::polar(1.0, -theta);
    const cplx carrier = wx * cx + wy * cy;
    const cplx coef_sx = wx * sxx + wy * syx;
    const cplx coef_sy = wx * sxy + wy * syy;
    return std::norm(carrier) / (std::norm(coef_sx) + std::norm(coef_sy));
}

}  // namespace

IdentityReport verify_identities() {
    IdentityReport rep;
    char buf[256];
    auto check = [&](bool ok, double residual, const char* what) {
        rep.pass = rep.pass && ok;
        rep.worst_residual = std::max(rep.worst_residual, residual);
        std::snprintf(buf, sizeof(buf), "[%s] %s (residual %.3e)",
                      ok ? "PASS" : "FAIL", what, residual);
        rep.lines.emplace_back(buf);
    };

    // closed-form grid: pair sums, floor of the second-largest CSPR, minima
    double worst_pair = 0.0, worst_floor = 0.0;
    double min_3x3 = 1e300, min_2x2_3det = 1e300, min_hyb_3det = 1e300;
    for (int i = 0; i <= 180; ++i) {
        const double a = (90.0 * i / 180.0) * kDeg;
        for (int j = 0; j <= 360; ++j) {
            const double t = (180.0 * j / 360.0) * kDeg;
            const auto v2 = cspr_2x2(a, t);
            const auto vh = cspr_hybrid(a, t);
            const auto v3 = cspr_3x3(a, t);
            worst_pair = std::max(worst_pair, std::abs(v2[0] + v2[1] - 2.0));
            worst_pair = std::max(worst_pair, std::abs(v2[2] + v2[3] - 2.0));
            worst_floor = std::max(worst_floor, 1.0 - second_max({v2.data(), 4}));
            worst_floor = std::max(worst_floor, 1.0 - second_max({vh.data(), 4}));
            min_2x2_3det = std::min(min_2x2_3det, second_max({v2.data(), 3}));
            min_hyb_3det = std::min(min_hyb_3det, second_max({vh.data(), 3}));
            min_3x3 = std::min(min_3x3, second_max({v3.data(), 3}));
        }
    }
    check(worst_pair < 1e-12, worst_pair, "2x2 pair sums equal 2*C_req on 181x361 grid");
    check(worst_floor < 1e-12, std::max(worst_floor, 0.0),
          "second-largest CSPR >= C_req for 2x2 and hybrid");
    check(std::abs(min_3x3 - 0.5) < 1e-3, std::abs(min_3x3 - 0.5),
          "3x3 SecondMax grid minimum = 0.5*C_req");
    const double target = 1.0 - std::numbers::sqrt2 / 2.0;
    check(std::abs(min_2x2_3det - target) < 1e-3, std::abs(min_2x2_3det - target),
          "2x2 three-detector SecondMax minimum = (1-sqrt(2)/2)*C_req");
    check(std::abs(min_hyb_3det - target) < 1e-3, std::abs(min_hyb_3det - target),
          "hybrid three-detector SecondMax minimum = (1-sqrt(2)/2)*C_req");

    // closed forms versus the branch-field power oracle
    {
        RandomStream rng(7, "identity_sop");
        double worst = 0.0;
        for (int it = 0; it < 400; ++it) {
            const double a = (rng.uniform() - 0.5) * 2.0 * kPi;
            const double t = (rng.uniform() - 0.5) * 2.0 * kPi;
            const auto v2 = cspr_2x2(a, t);
            const cplx weights2[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
            for (int b = 0; b < 4; ++b) {
                worst = std::max(worst, std::abs(v2[static_cast<std::size_t>(b)] -
                                                 branch_multiplier_oracle(
                                                     weights2[b][0], weights2[b][1], a, t)));
            }
            const auto vh = cspr_hybrid(a, t);
            const cplx j(0, 1);
            const cplx weightsh[4][2] = {{1, 1}, {1, -1}, {1, j}, {1, -j}};
            for (int b = 0; b < 4; ++b) {
                worst = std::max(worst, std::abs(vh[static_cast<std::size_t>(b)] -
                                                 branch_multiplier_oracle(
                                                     weightsh[b][0], weightsh[b][1], a, t)));
            }
            const auto v3 = cspr_3x3(a, t);
            const cplx ca = CouplerConstants::a(), cb = CouplerConstants::b();
            const cplx weights3[3][2] = {{ca, cb}, {cb, cb}, {cb, ca}};
            for (int b = 0; b < 3; ++b) {
                worst = std::max(worst, std::abs(v3[static_cast<std::size_t>(b)] -
                                                 branch_multiplier_oracle(
                                                     weights3[b][0], weights3[b][1], a, t)));
            }
        }
        check(worst < 1e-9, worst, "closed-form CSPRs match branch-field powers");
    }

    // photocurrent reconstruction identities on random field pairs
    {
        RandomStream rng(11, "identity_fields");
        const std::size_t n = 10000;
        std::vector<double> ix(n), iy(n), isum(n), idiff(n), ipjy(n), imjy(n);
        std::vector<double> d_diff(n), d_mjy(n);
        std::vector<double> i1(n), i2(n), i3(n);
        std::vector<double> d_sum(n), d_pjy(n);
        const cplx ca = CouplerConstants::a(), cb = CouplerConstants::b();
        for (std::size_t i = 0; i < n; ++i) {
            const cplx x = 2.0 * rng.cgaussian();
            const cplx y = 2.0 * rng.cgaussian();
            ix[i] = std::norm(x);
            iy[i] = std::norm(y);
            isum[i] = std::norm(x + y);
            idiff[i] = std::norm(x - y);
            ipjy[i] = std::norm(x + cplx(0, 1) * y);
            imjy[i] = std::norm(x - cplx(0, 1) * y);
            d_diff[i] = idiff[i];
            d_mjy[i] = imjy[i];
            d_sum[i] = isum[i];
            d_pjy[i] = ipjy[i];
            i1[i] = std::norm(ca * x + cb * y);
            i2[i] = std::norm(cb * x + cb * y);
            i3[i] = std::norm(cb * x + ca * y);
        }
        double worst9 = 0.0, worst12 = 0.0, worst15 = 0.0;
        const auto r9 = reconstruct_missing_2x2(ix, iy, isum);
        const auto r12 = reconstruct_missing_hybrid(isum, idiff, ipjy);
        const auto r15 = reconstruct_from_3x3(i1, i2, i3);
        for (std::size_t i = 0; i < n; ++i) {
            worst9 = std::max(worst9, std::abs(r9[i] - d_diff[i]));
            worst12 = std::max(worst12, std::abs(r12[i] - d_mjy[i]));
            const double alt12 = 2.0 * (ix[i] + iy[i]) - ipjy[i];
            worst12 = std::max(worst12, std::abs(alt12 - r12[i]));
            worst15 = std::max(worst15, std::abs(r15[0][i] - d_sum[i]));
            worst15 = std::max(worst15, std::abs(r15[1][i] - d_diff[i]));
            worst15 = std::max(worst15, std::abs(r15[2][i] - d_pjy[i]));
            worst15 = std::max(worst15, std::abs(r15[3][i] - d_mjy[i]));
        }
        check(worst9 < 1e-10, worst9, "three-detector identity (2x2) on 1e4 pairs");
        check(worst12 < 1e-10, worst12, "three-detector identity (hybrid), both forms");
        check(worst15 < 1e-10, worst15, "3x3 four-current reconstruction on 1e4 pairs");
    }

    // 3x3 transfer matrix unitarity
    {
        const cplx a = CouplerConstants::a(), b = CouplerConstants::b();
        const cplx m[3][3] = {{a, b, b}, {b, a, b}, {b, b, a}};
        double worst = std::abs(std::norm(a) - 1.0 / 3.0);
        worst = std::max(worst, std::abs(std::norm(b) - 1.0 / 3.0));
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                cplx acc = 0.0;
                for (int k = 0; k < 3; ++k) acc += m[r][k] * std::conj(m[c][k]);
                worst = std::max(worst, std::abs(acc - (r == c ? 1.0 : 0.0)));
            }
        }
        check(worst < 1e-12, worst, "3x3 coupler matrix unitary, |a|^2=|b|^2=1/3");
    }

    // worked branch-selection examples
    {
        const auto v = cspr_2x2(kPi / 4.0, kPi / 3.0);
        const double expect[4] = {0.5, 1.5, 0.25, 1.75};
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(v[static_cast<std::size_t>(i)] -
                                             expect[i]));
        }
        check(worst < 1e-12, worst, "2x2 multipliers at (45deg, pi/3)");
        const auto sel = select_branches(
            cspr_profile(Scheme::Coupler2x2, kPi / 4.0, kPi / 3.0), SelectMode::Top2);
        const bool ok = sel.size() == 2 && sel[0] == "Y" && sel[1] == "X-Y";
        check(ok, ok ? 0.0 : 1.0, "selected branches {Y, X-Y} at (45deg, pi/3)");
    }
    {
        // boosted worked example: multipliers at doubled carrier power
        const auto v = cspr_3x3(kPi / 16.0, kPi / 16.0);
        const double b0 = 2.0 * v[0], b1 = 2.0 * v[1], b2 = 2.0 * v[2];
        const double w0 = std::abs(b0 - 0.51), w1 = std::abs(b1 - 3.70);
        check(w0 < 0.01 && w1 < 0.01, std::max(w0, w1),
              "3x3 boosted multipliers 0.51 / 3.70 at (pi/16, pi/16)");
        const double oracle =
            2.0 * branch_multiplier_oracle(CouplerConstants::b(),
                                           CouplerConstants::a(), kPi / 16.0,
                                           kPi / 16.0);
        const double w2 = std::abs(b2 - oracle);
        std::snprintf(buf, sizeof(buf),
                      "  third boosted multiplier = %.4f (oracle %.4f)", b2, oracle);
        rep.lines.emplace_back(buf);
        check(w2 < 1e-9, w2, "3x3 boosted third multiplier matches field oracle");
        const double sum = b0 + b1 + b2;
        check(std::abs(sum - 6.0) < 1e-12, std::abs(sum - 6.0),
              "boosted 3x3 multipliers sum to 6");
    }
    return rep;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::string to_csv(const SweepResult& result) {
    std::string out =
        "point,variant,trial,seed,alpha_deg,theta_deg,xi_deg,osnr_db,cspr_db,"
        "dgd_ui,ber,evm_db,q_db,converged,bit_errors,bits_total,branch_cspr_db\n";
    for (const auto& r : result.rows) {
        out += std::to_string(r.point_index) + ',' + r.variant + ',' +
               std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',';
        out += fmt_double(r.alpha_deg) + ',' + fmt_double(r.theta_deg) + ',' +
               fmt_double(r.xi_deg) + ',';
        out += (r.osnr_db ? fmt_double(*r.osnr_db) : std::string()) + ',';
        out += fmt_double(r.cspr_db) + ',' + fmt_double(r.dgd_ui) + ',';
        out += fmt_double(r.metrics.ber) + ',' + fmt_double(r.metrics.evm_db) +
               ',' + fmt_double(r.metrics.q_db) + ',';
        out += (r.metrics.converged ? "1" : "0");
        out += ',' + std::to_string(r.metrics.bit_errors) + ',' +
               std::to_string(r.metrics.bits_total) + ',';
        for (std::size_t i = 0; i < r.metrics.per_branch_cspr_db.size(); ++i) {
            if (i) out += ';';
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4g", r.metrics.per_branch_cspr_db[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    const std::string text = to_csv(result);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// config file schema (version 1)

namespace {

using nlohmann::json;

double get_num(const json& j, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) throw ConfigError(std::string("expected number: ") + key);
    return j[key].get<double>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("schema_version") &&
            j["schema_version"].get<int>() != 1) {
            throw ConfigError("unsupported schema_version");
        }
        if (j.contains("frame")) {
            const auto& f = j["frame"];
            cfg.frame.qam_order =
                static_cast<unsigned>(get_num(f, "qam_order", 16));
            cfg.frame.train_len =
                static_cast<std::size_t>(get_num(f, "train_len", 512));
            cfg.frame.payload_len =
                static_cast<std::size_t>(get_num(f, "payload_len", 22400));
            cfg.frame.pilot_ratio = get_num(f, "pilot_ratio", 0.004);
            cfg.frame.baud = get_num(f, "baud", 56e9);
        }
        if (j.contains("rrc")) {
            cfg.rrc.rolloff = get_num(j["rrc"], "rolloff", 0.01);
            cfg.rrc.span = static_cast<int>(get_num(j["rrc"], "span", 64));
        }
        if (j.contains("carrier")) {
            cfg.carrier.cspr_db = get_num(j["carrier"], "cspr_db", 6.0);
            cfg.carrier.offset = get_num(j["carrier"], "offset_hz", 0.0);
            cfg.carrier.xi = get_num(j["carrier"], "xi_deg", 0.0) * kDeg;
        }
        if (j.contains("sop")) {
            cfg.sop.alpha = get_num(j["sop"], "alpha_deg", 0.0) * kDeg;
            cfg.sop.theta = get_num(j["sop"], "theta_deg", 0.0) * kDeg;
        }
        if (j.contains("link")) {
            const auto& l = j["link"];
            cfg.link.fiber_km = get_num(l, "fiber_km", 0.0);
            cfg.link.beta2 =
                beta2_from_dispersion(get_num(l, "dispersion_ps_nm_km", 17.0));
            cfg.link.pmd_sections = static_cast<int>(get_num(l, "pmd_sections", 15));
            cfg.link.pmd_param = get_num(l, "pmd_param", 0.0);
            if (l.contains("osnr_db") && !l["osnr_db"].is_null()) {
                cfg.link.osnr_db = l["osnr_db"].get<double>();
            }
        } else {
            cfg.link.beta2 = beta2_from_dispersion(17.0);
        }
        if (j.contains("frontend")) {
            const auto& f = j["frontend"];
            if (f.contains("scheme")) {
                cfg.frontend.scheme = scheme_from_name(f["scheme"].get<std::string>());
            }
            if (f.contains("detector")) {
                cfg.frontend.mode =
                    detector_mode_from_name(f["detector"].get<std::string>());
            }
            if (f.contains("electrical_snr_db") && !f["electrical_snr_db"].is_null()) {
                cfg.frontend.electrical_snr_db = f["electrical_snr_db"].get<double>();
            }
        }
        if (j.contains("gr")) {
            cfg.gr.c_req_db = get_num(j["gr"], "c_req_db", 6.0);
            cfg.gr.working_sps = static_cast<int>(get_num(j["gr"], "working_sps", 8));
        }
        if (j.contains("mimo")) {
            const auto& m = j["mimo"];
            cfg.mimo.taps = static_cast<int>(get_num(m, "taps", 51));
            cfg.mimo.train_len =
                static_cast<std::size_t>(get_num(m, "train_len", 512));
            cfg.mimo.rls_lambda = get_num(m, "rls_lambda", 0.999);
            cfg.mimo.rls_delta = get_num(m, "rls_delta", 0.01);
            if (m.contains("mode")) {
                const auto s = m["mode"].get<std::string>();
                if (s == "train_then_freeze") {
                    cfg.mimo.mode = MimoSpec::Mode::TrainThenFreeze;
                } else if (s == "train_then_dd") {
                    cfg.mimo.mode = MimoSpec::Mode::TrainThenDd;
                } else {
                    throw ConfigError("unknown mimo mode: " + s);
                }
            }
        }
        if (j.contains("cpe")) {
            cfg.cpe.pilot_ratio = get_num(j["cpe"], "pilot_ratio", 0.004);
            cfg.cpe.bps_angles = static_cast<int>(get_num(j["cpe"], "bps_angles", 32));
            cfg.cpe.bps_window = static_cast<int>(get_num(j["cpe"], "bps_window", 64));
        }
        if (j.contains("sim")) {
            const auto& s = j["sim"];
            cfg.sim.sps = static_cast<int>(get_num(s, "sps", 8));
            cfg.sim.guard_frac = get_num(s, "guard_frac", 0.01);
            cfg.sim.freq_offset_hz = get_num(s, "freq_offset_hz", 0.0);
            if (s.contains("sp_mode")) cfg.sim.sp_mode = s["sp_mode"].get<bool>();
            cfg.sim.obpf_margin = get_num(s, "obpf_margin", 0.05);
        }
        if (j.contains("sweep")) {
            const auto& s = j["sweep"];
            const std::string kind = s.value("kind", "single");
            if (kind == "single") {
                cfg.sweep.kind = SweepAxis::Kind::Single;
            } else if (kind == "sop_grid") {
                cfg.sweep.kind = SweepAxis::Kind::SopGrid;
            } else if (kind == "osnr_db") {
                cfg.sweep.kind = SweepAxis::Kind::OsnrList;
            } else if (kind == "cspr_db") {
                cfg.sweep.kind = SweepAxis::Kind::CsprList;
            } else if (kind == "dgd_ui") {
                cfg.sweep.kind = SweepAxis::Kind::DgdList;
            } else if (kind == "xi_deg") {
                cfg.sweep.kind = SweepAxis::Kind::XiList;
            } else {
                throw ConfigError("unknown sweep kind: " + kind);
            }
            cfg.sweep.alpha_count = static_cast<int>(get_num(s, "alpha_count", 1));
            cfg.sweep.theta_count = static_cast<int>(get_num(s, "theta_count", 1));
            cfg.sweep.alpha_start_deg = get_num(s, "alpha_start_deg", 0.0);
            cfg.sweep.alpha_stop_deg = get_num(s, "alpha_stop_deg", 90.0);
            cfg.sweep.theta_start_deg = get_num(s, "theta_start_deg", 0.0);
            cfg.sweep.theta_stop_deg = get_num(s, "theta_stop_deg", 180.0);
            if (s.contains("values")) {
                cfg.sweep.values = s["values"].get<std::vector<double>>();
            }
            if (s.contains("sop_list_deg")) {
                for (const auto& e : s["sop_list_deg"]) {
                    cfg.sweep.sop_list_deg.push_back(
                        {e.at(0).get<double>(), e.at(1).get<double>()});
                }
            }
        }
        if (j.contains("variants")) {
            for (const auto& e : j["variants"]) {
                Variant v;
                v.name = e.value("name", "base");
                if (e.contains("sp_mode")) v.sp_mode = e["sp_mode"].get<bool>();
                if (e.contains("mimo_taps")) v.mimo_taps = e["mimo_taps"].get<int>();
                if (e.contains("cspr_db")) v.cspr_db = e["cspr_db"].get<double>();
                if (e.contains("detector")) {
                    v.detector_mode =
                        detector_mode_from_name(e["detector"].get<std::string>());
                }
                cfg.variants.push_back(std::move(v));
            }
        }
        if (j.contains("osnr_ref_cspr_db") && !j["osnr_ref_cspr_db"].is_null()) {
            cfg.osnr_ref_cspr_db = j["osnr_ref_cspr_db"].get<double>();
        }
        cfg.trials_per_point = static_cast<int>(get_num(j, "trials_per_point", 1));
        cfg.seed = static_cast<std::uint64_t>(get_num(j, "seed", 1));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    if (cfg.sim.sps < 4) throw ConfigError("sim.sps must be >= 4");
    if (cfg.gr.working_sps < 4) throw ConfigError("gr.working_sps must be >= 4");
    if (cfg.cpe.pilot_ratio <= 0.0 || cfg.cpe.pilot_ratio > 0.05) {
        throw ConfigError("cpe.pilot_ratio must be in (0, 0.05]");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["frame"] = {{"qam_order", cfg.frame.qam_order},
                  {"train_len", cfg.frame.train_len},
                  {"payload_len", cfg.frame.payload_len},
                  {"pilot_ratio", cfg.frame.pilot_ratio},
                  {"baud", cfg.frame.baud}};
    j["rrc"] = {{"rolloff", cfg.rrc.rolloff}, {"span", cfg.rrc.span}};
    j["carrier"] = {{"cspr_db", cfg.carrier.cspr_db},
                    {"offset_hz", cfg.carrier.offset},
                    {"xi_deg", cfg.carrier.xi / kDeg}};
    j["sop"] = {{"alpha_deg", cfg.sop.alpha / kDeg},
                {"theta_deg", cfg.sop.theta / kDeg}};
    json link = {{"fiber_km", cfg.link.fiber_km},
                 {"dispersion_ps_nm_km",
                  cfg.link.beta2 == 0.0
                      ? 0.0
                      : cfg.link.beta2 / beta2_from_dispersion(1.0)},
                 {"pmd_sections", cfg.link.pmd_sections},
                 {"pmd_param", cfg.link.pmd_param}};
    if (cfg.link.osnr_db) {
        link["osnr_db"] = *cfg.link.osnr_db;
    } else {
        link["osnr_db"] = nullptr;
    }
    j["link"] = link;
    json fe = {{"scheme", scheme_name(cfg.frontend.scheme)},
               {"detector", detector_mode_name(cfg.frontend.mode)}};
    if (cfg.frontend.electrical_snr_db) {
        fe["electrical_snr_db"] = *cfg.frontend.electrical_snr_db;
    } else {
        fe["electrical_snr_db"] = nullptr;
    }
    j["frontend"] = fe;
    j["gr"] = {{"kind", "kkr"},
               {"c_req_db", cfg.gr.c_req_db},
               {"working_sps", cfg.gr.working_sps}};
    j["mimo"] = {{"taps", cfg.mimo.taps},
                 {"train_len", cfg.mimo.train_len},
                 {"rls_lambda", cfg.mimo.rls_lambda},
                 {"rls_delta", cfg.mimo.rls_delta},
                 {"mode", cfg.mimo.mode == MimoSpec::Mode::TrainThenFreeze
                              ? "train_then_freeze"
                              : "train_then_dd"}};
    j["cpe"] = {{"pilot_ratio", cfg.cpe.pilot_ratio},
                {"bps_angles", cfg.cpe.bps_angles},
                {"bps_window", cfg.cpe.bps_window}};
    j["sim"] = {{"sps", cfg.sim.sps},
                {"guard_frac", cfg.sim.guard_frac},
                {"freq_offset_hz", cfg.sim.freq_offset_hz},
                {"sp_mode", cfg.sim.sp_mode},
                {"obpf_margin", cfg.sim.obpf_margin}};
    json sweep;
    switch (cfg.sweep.kind) {
        case SweepAxis::Kind::Single: sweep["kind"] = "single"; break;
        case SweepAxis::Kind::SopGrid: sweep["kind"] = "sop_grid"; break;
        case SweepAxis::Kind::OsnrList: sweep["kind"] = "osnr_db"; break;
        case SweepAxis::Kind::CsprList: sweep["kind"] = "cspr_db"; break;
        case SweepAxis::Kind::DgdList: sweep["kind"] = "dgd_ui"; break;
        case SweepAxis::Kind::XiList: sweep["kind"] = "xi_deg"; break;
    }
    sweep["alpha_count"] = cfg.sweep.alpha_count;
    sweep["theta_count"] = cfg.sweep.theta_count;
    sweep["alpha_start_deg"] = cfg.sweep.alpha_start_deg;
    sweep["alpha_stop_deg"] = cfg.sweep.alpha_stop_deg;
    sweep["theta_start_deg"] = cfg.sweep.theta_start_deg;
    sweep["theta_stop_deg"] = cfg.sweep.theta_stop_deg;
    sweep["values"] = cfg.sweep.values;
    json sop_list = json::array();
    for (const auto& s : cfg.sweep.sop_list_deg) sop_list.push_back({s[0], s[1]});
    sweep["sop_list_deg"] = sop_list;
    j["sweep"] = sweep;
    json variants = json::array();
    for (const auto& v : cfg.variants) {
        json e = {{"name", v.name}};
        if (v.sp_mode) e["sp_mode"] = *v.sp_mode;
        if (v.mimo_taps) e["mimo_taps"] = *v.mimo_taps;
        if (v.cspr_db) e["cspr_db"] = *v.cspr_db;
        if (v.detector_mode) e["detector"] = detector_mode_name(*v.detector_mode);
        variants.push_back(e);
    }
    j["variants"] = variants;
    if (cfg.osnr_ref_cspr_db) {
        j["osnr_ref_cspr_db"] = *cfg.osnr_ref_cspr_db;
    } else {
        j["osnr_ref_cspr_db"] = nullptr;
    }
    j["trials_per_point"] = cfg.trials_per_point;
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig3a", "fig3b", "cspr-sweep", "xi-sweep",
            "carrier-boost"};
}

std::string preset_path(const std::string& name) {
    namespace fs = std::filesystem;
    std::vector<fs::path> roots;
    if (const char* env = std::getenv("JSFR_CONFIG_DIR")) roots.emplace_back(env);
    roots.emplace_back("configs");
#ifdef JSFR_SOURCE_DIR
    roots.emplace_back(fs::path(JSFR_SOURCE_DIR) / "configs");
#endif
    for (const auto& root : roots) {
        const fs::path p = root / (name + ".json");
        std::error_code ec;
        if (fs::exists(p, ec)) return p.string();
    }
    throw ConfigError("unknown preset: " + name);
}

}  // namespace jsfr
