#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jsfr/channel.hpp"
#include "jsfr/recovery.hpp"
#include "jsfr/resample.hpp"
#include "jsfr/rng.hpp"
#include "jsfr/txchain.hpp"

using namespace jsfr;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: build the receiver-side branch field coefficients by
// explicit matrix algebra on (C, Sx, Sy) and ratio the powers.
double oracle_multiplier(cplx wx, cplx wy, double alpha, double theta) {
    // rows of the rotation applied to the transmit vector (C+Sx, C+Sy)
    const cplx m00 = std::cos(alpha) * std::polar(1.0, theta);
    const cplx m01 = -std::sin(alpha);
    const cplx m10 = std::sin(alpha);
    const cplx m11 = std::cos(alpha) * std::polar(1.0, -theta);
    // branch = wx*X + wy*Y with X = m00*(C+Sx) + m01*(C+Sy), etc.
    const cplx carrier = wx * (m00 + m01) + wy * (m10 + m11);
    const cplx sx = wx * m00 + wy * m10;
    const cplx sy = wx * m01 + wy * m11;
    return std::norm(carrier) / (std::norm(sx) + std::norm(sy));
}

struct BranchFixture {
    std::vector<double> current;
    ComplexSignal truth;
    double rate = 0.0;
    double carrier_freq = 0.0;
    double baud = 0.0;
};

// Single-polarization edge-carrier SSB branch, noiseless.
BranchFixture make_branch(double cspr_db, std::uint64_t seed,
                          std::size_t total_syms = 4096) {
    FrameSpec fs;
    fs.payload_len = total_syms - fs.train_len;
    const auto frame = generate_frame(fs, seed);
    const auto sig = modulate(frame, RrcSpec{0.01, 64, 8});
    BranchFixture fx;
    fx.baud = fs.baud;
    fx.rate = sig.sample_rate();
    fx.carrier_freq = snap_to_bin(default_carrier_offset(fs.baud, 0.01),
                                  sig.size(), fx.rate);
    const double amp = std::sqrt(std::pow(10.0, cspr_db / 10.0) * power(sig.x));
    fx.truth = sig.x;
    const double w = 2.0 * kPi * fx.carrier_freq / fx.rate;
    for (std::size_t i = 0; i < fx.truth.size(); ++i) {
        fx.truth.samples[i] += amp * std::polar(1.0, w * static_cast<double>(i));
    }
    fx.current.resize(fx.truth.size());
    for (std::size_t i = 0; i < fx.truth.size(); ++i) {
        fx.current[i] = std::norm(fx.truth.samples[i]);
    }
    return fx;
}

// relative power of (rec - truth) after complex least-squares alignment
double aligned_error_db(const ComplexSignal& rec, const ComplexSignal& truth) {
    REQUIRE(rec.size() == truth.size());
    cplx cross = 0.0;
    double pr = 0.0, pt = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        cross += truth.samples[i] * std::conj(rec.samples[i]);
        pr += std::norm(rec.samples[i]);
        pt += std::norm(truth.samples[i]);
    }
    const cplx c = cross / pr;
    double err = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        err += std::norm(c * rec.samples[i] - truth.samples[i]);
    }
    return 10.0 * std::log10(err / pt);
}

}  // namespace

TEST_CASE("cspr_2x2 worked examples") {
    const auto v = cspr_2x2(kPi / 4.0, kPi / 3.0);
    CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx(1.75).epsilon(1e-12));

    const auto v0 = cspr_2x2(0.0, 0.0);
    CHECK(v0[0] == doctest::Approx(1.0));
    CHECK(v0[1] == doctest::Approx(1.0));
    CHECK(v0[2] == doctest::Approx(2.0));
    CHECK(v0[3] == doctest::Approx(0.0));
}

TEST_CASE("cspr pair sums are exact on a dense grid") {
    double worst = 0.0;
    for (int i = 0; i <= 90; ++i) {
        for (int j = 0; j <= 180; j += 2) {
            const auto v = cspr_2x2(i * kPi / 180.0, j * kPi / 180.0);
            worst = std::max(worst, std::abs(v[0] + v[1] - 2.0));
            worst = std::max(worst, std::abs(v[2] + v[3] - 2.0));
            const auto h = cspr_hybrid(i * kPi / 180.0, j * kPi / 180.0);
            worst = std::max(worst, std::abs(h[0] + h[1] + h[2] + h[3] - 4.0));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("cspr_hybrid worked examples") {
    const auto v0 = cspr_hybrid(0.0, 0.0);
    CHECK(v0[0] == doctest::Approx(2.0));
    CHECK(v0[1] == doctest::Approx(0.0));
    CHECK(v0[2] == doctest::Approx(1.0));
    CHECK(v0[3] == doctest::Approx(1.0));

    const auto v = cspr_hybrid(kPi / 4.0, kPi / 4.0);
    CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cspr_3x3 worked examples and field-power equivalence") {
    const auto v0 = cspr_3x3(0.0, 0.0);
    CHECK(v0[1] == doctest::Approx(2.0));
    CHECK(v0[0] + v0[1] + v0[2] == doctest::Approx(3.0).epsilon(1e-12));

    // doubled-carrier operating point quoted for (pi/16, pi/16)
    const auto v = cspr_3x3(kPi / 16.0, kPi / 16.0);
    CHECK(2.0 * v[0] == doctest::Approx(0.51).epsilon(0.01 / 0.51));
    CHECK(2.0 * v[1] == doctest::Approx(3.70).epsilon(0.01 / 3.70));
    CHECK(2.0 * v[2] ==
          doctest::Approx(2.0 * oracle_multiplier(CouplerConstants::b(),
                                                  CouplerConstants::a(),
                                                  kPi / 16.0, kPi / 16.0))
              .epsilon(1e-9));
    CHECK(2.0 * (v[0] + v[1] + v[2]) == doctest::Approx(6.0).epsilon(1e-12));

    RandomStream rng(31, "sop3");
    const cplx a = CouplerConstants::a(), b = CouplerConstants::b();
    double worst = 0.0;
    for (int it = 0; it < 300; ++it) {
        const double al = (rng.uniform() - 0.5) * 2.0 * kPi;
        const double th = (rng.uniform() - 0.5) * 2.0 * kPi;
        const auto got = cspr_3x3(al, th);
        worst = std::max(worst, std::abs(got[0] - oracle_multiplier(a, b, al, th)));
        worst = std::max(worst, std::abs(got[1] - oracle_multiplier(b, b, al, th)));
        worst = std::max(worst, std::abs(got[2] - oracle_multiplier(b, a, al, th)));
        const auto g2 = cspr_2x2(al, th);
        worst = std::max(worst, std::abs(g2[0] - oracle_multiplier(1.0, 0.0, al, th)));
        worst = std::max(worst, std::abs(g2[3] - oracle_multiplier(1.0, -1.0, al, th)));
        const auto gh = cspr_hybrid(al, th);
        worst = std::max(worst,
                         std::abs(gh[2] - oracle_multiplier(1.0, cplx(0, 1), al, th)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("second_max basics and grid minima") {
    const double vals[] = {0.5, 1.5, 0.25, 1.75};
    CHECK(second_max({vals, 4}) == doctest::Approx(1.5));
    const double two[] = {3.0, 1.0};
    CHECK(second_max({two, 2}) == doctest::Approx(1.0));
    const double one[] = {1.0};
    CHECK_THROWS(second_max({one, 1}));

    double min3 = 1e300, min2 = 1e300, minh = 1e300, floor_full = 1e300;
    for (int i = 0; i <= 180; ++i) {
        const double a = (90.0 * i / 180.0) * kPi / 180.0 * 2.0;  // 0..pi
        for (int j = 0; j <= 360; ++j) {
            const double t = (180.0 * j / 360.0) * kPi / 180.0;
            const auto v3 = cspr_3x3(a / 2.0, t);
            min3 = std::min(min3, second_max({v3.data(), 3}));
            const auto v2 = cspr_2x2(a / 2.0, t);
            min2 = std::min(min2, second_max({v2.data(), 3}));
            floor_full = std::min(floor_full, second_max({v2.data(), 4}));
            const auto vh = cspr_hybrid(a / 2.0, t);
            minh = std::min(minh, second_max({vh.data(), 3}));
            floor_full = std::min(floor_full, second_max({vh.data(), 4}));
        }
    }
    CHECK(std::abs(min3 - 0.5) < 1e-3);
    CHECK(std::abs(min2 - (1.0 - std::numbers::sqrt2 / 2.0)) < 1e-3);
    CHECK(std::abs(minh - (1.0 - std::numbers::sqrt2 / 2.0)) < 1e-3);
    CHECK(floor_full >= 1.0 - 1e-12);
}

TEST_CASE("select_branches picks the two strongest, ties by label order") {
    const auto p = cspr_profile(Scheme::Coupler2x2, kPi / 4.0, kPi / 3.0);
    const auto sel = select_branches(p, SelectMode::Top2);
    REQUIRE(sel.size() == 2);
    CHECK(sel[0] == "Y");
    CHECK(sel[1] == "X-Y");

    const auto all = select_branches(p, SelectMode::All);
    CHECK(all == std::vector<std::string>{"X", "Y", "X+Y", "X-Y"});

    const auto tie = cspr_profile(Scheme::Coupler2x2, 0.0, 0.0);  // (1,1,2,0)
    const auto sel2 = select_branches(tie, SelectMode::Top2);
    CHECK(sel2[0] == "X");
    CHECK(sel2[1] == "X+Y");
}

TEST_CASE("kkr: constant current gives a constant field") {
    GrSpec gr;
    const std::size_t n = 4096;
    const double baud = 1.0, rate = 8.0;
    const auto rec = kkr_recover(std::vector<double>(n, 1.0), gr, 0.0, rate, baud);
    for (std::size_t i = 0; i < rec.size(); i += 199) {
        CHECK(std::abs(rec.samples[i] - cplx(1.0, 0.0)) < 1e-9);
    }
    CHECK_THROWS(kkr_recover(std::vector<double>(n, 0.0), gr, 0.0, rate, baud));
}

TEST_CASE("kkr: a pure carrier tone is trivially minimum phase") {
    GrSpec gr;
    const double baud = 56e9, rate = 8.0 * baud;
    const std::size_t n = 1 << 14;
    const double f_c = snap_to_bin(-0.515 * baud, n, rate);
    ComplexSignal truth;
    truth.sample_rate = rate;
    truth.samples.resize(n);
    std::vector<double> current(n);
    for (std::size_t i = 0; i < n; ++i) {
        truth.samples[i] = 0.8 * std::polar(1.0, 2.0 * kPi * f_c * i / rate);
        current[i] = std::norm(truth.samples[i]);
    }
    const auto rec = kkr_recover(current, gr, f_c, rate, baud);
    CHECK(aligned_error_db(rec, truth) < -40.0);
}

TEST_CASE("kkr: noiseless branch recovery at C_req + 3 dB is below -30 dB") {
    const auto fx = make_branch(9.0, 5);
    const auto rec = kkr_recover(fx.current, GrSpec{}, fx.carrier_freq, fx.rate,
                                 fx.baud);
    CHECK(aligned_error_db(rec, fx.truth) < -30.0);
}

TEST_CASE("kkr: recovery error falls monotonically up the CSPR ladder") {
    double prev = 1e9;
    for (double cspr : {6.0, 9.0, 12.0}) {
        const auto fx = make_branch(cspr, 6);
        const auto rec =
            kkr_recover(fx.current, GrSpec{}, fx.carrier_freq, fx.rate, fx.baud);
        const double err = aligned_error_db(rec, fx.truth);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("kkr: scale equivariance") {
    const auto fx = make_branch(9.0, 7, 2048);
    const double c = 1.7;
    std::vector<double> scaled = fx.current;
    for (double& v : scaled) v *= c * c;
    const auto r1 = kkr_recover(fx.current, GrSpec{}, fx.carrier_freq, fx.rate,
                                fx.baud);
    const auto r2 = kkr_recover(scaled, GrSpec{}, fx.carrier_freq, fx.rate,
                                fx.baud);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        worst = std::max(worst, std::abs(r2.samples[i] - c * r1.samples[i]));
        scale = std::max(scale, std::abs(r1.samples[i]));
    }
    CHECK(worst / scale < 1e-9);
}

TEST_CASE("kkr: internal resampling to the working rate") {
    const auto fx = make_branch(9.0, 8);
    // photocurrent captured at 4 samples per symbol
    ComplexSignal cur4;
    cur4.sample_rate = fx.rate;
    cur4.samples.assign(fx.current.begin(), fx.current.end());
    cur4 = resample(cur4, fx.rate / 2.0);
    std::vector<double> current4(cur4.size());
    for (std::size_t i = 0; i < cur4.size(); ++i) {
        current4[i] = cur4.samples[i].real();
    }
    const auto rec = kkr_recover(current4, GrSpec{}, fx.carrier_freq,
                                 fx.rate / 2.0, fx.baud);
    CHECK(rec.sample_rate == doctest::Approx(8.0 * fx.baud));
    CHECK(aligned_error_db(rec, fx.truth) < -25.0);
}

TEST_CASE("estimate_cspr on fields") {
    const double baud = 56e9, rate = 8.0 * baud;
    const std::size_t n = 1 << 14;
    const double f_c = snap_to_bin(-0.515 * baud, n, rate);
    // pure tone saturates the cap
    ComplexSignal tone;
    tone.sample_rate = rate;
    tone.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        tone.samples[i] = std::polar(1.0, 2.0 * kPi * f_c * i / rate);
    }
    CHECK(estimate_cspr(tone, f_c) == doctest::Approx(60.0));

    const auto fx = make_branch(12.0, 9);
    CHECK(estimate_cspr(fx.truth, fx.carrier_freq) == doctest::Approx(12.0).epsilon(0.3 / 12.0));

    // carrier-free signal
    FrameSpec fs;
    fs.payload_len = 4096 - 512;
    const auto frame = generate_frame(fs, 10);
    const auto sig = modulate(frame, RrcSpec{0.01, 64, 8});
    CHECK(estimate_cspr(sig.x, f_c) < -20.0);
}

TEST_CASE("estimate_cspr on photocurrents") {
    const auto fx = make_branch(12.0, 11);
    CHECK(estimate_cspr(fx.current, fx.rate) == doctest::Approx(12.0).epsilon(0.3 / 12.0));
    const auto weak = make_branch(3.0, 12);
    const auto strong = make_branch(15.0, 12);
    CHECK(estimate_cspr(weak.current, weak.rate) <
          estimate_cspr(strong.current, strong.rate));
}
