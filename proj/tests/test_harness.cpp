#include <cmath>
#include <cstdio>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <numbers>

#include "doctest.h"
#include "jsfr/harness.hpp"

using namespace jsfr;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.frame.payload_len = 4096 - 512;
    cfg.carrier.cspr_db = 6.0;
    cfg.link.osnr_db = 30.0;
    cfg.mimo.taps = 5;
    cfg.trials_per_point = 1;
    cfg.seed = 5;
    return cfg;
}

}  // namespace

TEST_CASE("run_trial is deterministic given (config, point, seed)") {
    const auto cfg = small_config();
    TrialPoint pt;
    pt.sop = {0.3, 1.2};
    const auto a = run_trial(cfg, pt, 42);
    const auto b = run_trial(cfg, pt, 42);
    CHECK(a.ber == b.ber);
    CHECK(a.evm_db == b.evm_db);
    CHECK(a.q_db == b.q_db);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.per_branch_cspr_db == b.per_branch_cspr_db);
    const auto c = run_trial(cfg, pt, 43);
    CHECK(a.bit_errors != c.bit_errors);
}

TEST_CASE("end-to-end: field recovery beats the polarization-faded baseline") {
    auto cfg = small_config();
    TrialPoint benign;
    benign.sop = {0.0, 0.0};
    const auto jsfr_metrics = run_trial(cfg, benign, 7);
    CHECK(jsfr_metrics.ber < 2e-2);
    CHECK(jsfr_metrics.converged);

    // the PBS-only receiver collapses when the carrier leaves one branch
    auto pbs = cfg;
    pbs.frontend.scheme = Scheme::PbsBaseline;
    TrialPoint worst;
    worst.sop = {45.0 * kDeg, 0.0};
    CHECK(run_trial(pbs, worst, 7).ber > 1e-1);
}

TEST_CASE("detector modes: reconstruction and selection paths demodulate") {
    auto cfg = small_config();
    TrialPoint pt;
    pt.sop = {30.0 * kDeg, 40.0 * kDeg};

    cfg.frontend.mode = DetectorMode::ReconstructFourth;
    CHECK(run_trial(cfg, pt, 9).ber < 2e-2);

    cfg.frontend.mode = DetectorMode::Top2;
    CHECK(run_trial(cfg, pt, 9).ber < 3e-2);

    cfg.frontend.scheme = Scheme::Coupler3x3;
    cfg.frontend.mode = DetectorMode::Direct3;
    TrialPoint even;
    even.sop = {45.0 * kDeg, 0.0};
    CHECK(run_trial(cfg, even, 9).ber < 2e-2);

    cfg.frontend.mode = DetectorMode::ReconstructFourth;
    CHECK(run_trial(cfg, even, 9).ber < 2e-2);

    // direct3 demands the 3x3 front end
    cfg.frontend.scheme = Scheme::Coupler2x2;
    cfg.frontend.mode = DetectorMode::Direct3;
    CHECK_THROWS_AS(run_trial(cfg, even, 9), ConfigError);
}

TEST_CASE("top-2 selection tracks the all-branch receiver at CSPR margin") {
    // the theoretical two-branch route and the all-branch route agree at
    // C_req + 3 dB
    auto cfg = small_config();
    cfg.frame.payload_len = 8192 - 512;
    cfg.carrier.cspr_db = 9.0;
    cfg.mimo.taps = 15;
    TrialPoint pt;
    pt.sop = {45.0 * kDeg, 60.0 * kDeg};
    std::size_t errs_all = 0, errs_top = 0, bits = 0;
    for (std::uint64_t s = 1; s <= 2; ++s) {
        cfg.frontend.mode = DetectorMode::Direct;
        const auto all = run_trial(cfg, pt, s);
        cfg.frontend.mode = DetectorMode::Top2;
        const auto top = run_trial(cfg, pt, s);
        errs_all += all.bit_errors;
        errs_top += top.bit_errors;
        bits += all.bits_total;
    }
    CHECK(errs_all > 10);  // the comparison needs countable errors
    const double ratio = static_cast<double>(errs_top) /
                         static_cast<double>(std::max<std::size_t>(errs_all, 1));
    CHECK(ratio <= 2.0);
    CHECK(ratio >= 0.5);
}

TEST_CASE("sweep: cardinality and worker invariance") {
    auto cfg = small_config();
    cfg.frame.payload_len = 2048 - 512;
    cfg.sweep.kind = SweepAxis::Kind::SopGrid;
    cfg.sweep.alpha_count = 5;
    cfg.sweep.theta_count = 5;
    const auto r1 = sweep(cfg, 1);
    CHECK(r1.rows.size() == 25);
    const auto r2 = sweep(cfg, 3);
    CHECK(to_csv(r1) == to_csv(r2));
}

TEST_CASE("sweep axes produce the expected points") {
    auto cfg = small_config();
    cfg.sweep.kind = SweepAxis::Kind::OsnrList;
    cfg.sweep.values = {20.0, 25.0, 30.0};
    CHECK(sweep_points(cfg).size() == 3);

    cfg.sweep.kind = SweepAxis::Kind::DgdList;
    cfg.sweep.values = {0.0, 0.5};
    cfg.sweep.sop_list_deg = {{0, 0}, {45, 0}, {45, 90}};
    CHECK(sweep_points(cfg).size() == 6);

    cfg.sweep.kind = SweepAxis::Kind::XiList;
    cfg.sweep.values.clear();
    CHECK_THROWS_AS(sweep_points(cfg), ConfigError);
}

TEST_CASE("csv output: header, rows, determinism") {
    SweepResult empty;
    const auto header_only = to_csv(empty);
    CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 1);

    auto cfg = small_config();
    cfg.frame.payload_len = 2048 - 512;
    cfg.sweep.kind = SweepAxis::Kind::SopGrid;
    cfg.sweep.alpha_count = 5;
    cfg.sweep.theta_count = 5;
    const auto result = sweep(cfg, 2);
    const auto text = to_csv(result);
    CHECK(std::count(text.begin(), text.end(), '\n') == 26);

    const auto path = (std::filesystem::temp_directory_path() / "jsfr_test.csv").string();
    emit_csv(result, path);
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == text);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(emit_csv(result, "/nonexistent_dir_zzz/out.csv"), IoError);
}

TEST_CASE("config round-trips through serialization") {
    auto cfg = small_config();
    cfg.frontend.scheme = Scheme::Coupler3x3;
    cfg.frontend.mode = DetectorMode::Top2;
    cfg.frontend.electrical_snr_db = 24.0;
    cfg.osnr_ref_cspr_db = 6.0;
    cfg.variants.push_back({"boost", std::nullopt, 5, 9.0, std::nullopt});
    cfg.sweep.kind = SweepAxis::Kind::DgdList;
    cfg.sweep.values = {0.0, 0.25, 0.5};
    cfg.sweep.sop_list_deg = {{0, 0}, {45, 90}};
    const auto text = dump_config(cfg);
    const auto back = parse_config(text);
    CHECK(dump_config(back) == text);
    CHECK(back.frontend.mode == DetectorMode::Top2);
    CHECK(back.variants.size() == 1);
    CHECK(back.variants[0].mimo_taps == 5);
    CHECK(*back.osnr_ref_cspr_db == 6.0);
}

TEST_CASE("config validation failures") {
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema_version": 2})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"frontend": {"scheme": "bogus"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"cpe": {"pilot_ratio": 0.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"sps": 2}})"), ConfigError);
    CHECK_THROWS_AS(load_config("/no/such/file.json"), IoError);
}

TEST_CASE("every committed preset loads and enumerates points") {
    for (const auto& name : preset_names()) {
        const auto cfg = load_config(preset_path(name));
        CHECK(cfg.frame.total_len() > 0);
        CHECK(!sweep_points(cfg).empty());
    }
    CHECK_THROWS_AS(preset_path("not-a-preset"), ConfigError);
}

TEST_CASE("identity verification passes on a fresh build") {
    const auto report = verify_identities();
    CHECK(report.pass);
    for (const auto& line : report.lines) {
        CHECK(line.find("FAIL") == std::string::npos);
    }
}
