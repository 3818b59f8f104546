#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jsfr/rng.hpp"
#include "jsfr/signal.hpp"

namespace jsfr {

enum class Scheme { PbsBaseline, Coupler2x2, Hybrid90, Coupler3x3 };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// 3x3 coupler transfer constants: a = (2 e^{j2pi/9} + e^{-j4pi/9})/3 and
/// b = (e^{-j4pi/9} - e^{j2pi/9})/3, with |a|^2 = |b|^2 = 1/3.
struct CouplerConstants {
    static cplx a();
    static cplx b();
};

/// Per-branch optical fields and, after detection, photocurrents.
struct BranchSet {
    Scheme scheme = Scheme::Coupler2x2;
    std::vector<std::string> labels;
    std::vector<ComplexSignal> fields;
    std::vector<std::vector<double>> currents;
    double sample_rate = 0.0;

    std::size_t count() const { return labels.size(); }
    std::size_t index_of(const std::string& label) const;
};

/// Branch fields for the chosen front end, using the unnormalized
/// unit-gain convention (X+Y rather than (X+Y)/sqrt(2)).
///   PbsBaseline: X, Y
///   Coupler2x2:  X, Y, X+Y, X-Y
///   Hybrid90:    X+Y, X-Y, X+jY, X-jY
///   Coupler3x3:  aX+bY, bX+bY, bX+aY
BranchSet split_branches(const JonesSignal& sig, Scheme scheme);

/// Square-law detection, responsivity 1: current = |field|^2 per branch.
/// Optional white Gaussian electrical noise at the given per-branch SNR
/// (AC current power over noise power).
void detect(BranchSet& branches, std::optional<double> electrical_snr_db,
            RandomStream* rng);

// Photocurrent reconstruction identities (delta-function branch kernel):
// |X-Y|^2 = 2|X|^2 + 2|Y|^2 - |X+Y|^2
std::vector<double> reconstruct_missing_2x2(const std::vector<double>& i_x,
                                            const std::vector<double>& i_y,
                                            const std::vector<double>& i_sum);
// |X-jY|^2 = |X+Y|^2 + |X-Y|^2 - |X+jY|^2
std::vector<double> reconstruct_missing_hybrid(const std::vector<double>& i_sum,
                                               const std::vector<double>& i_diff,
                                               const std::vector<double>& i_pjy);
// (|X+Y|^2, |X-Y|^2, |X+jY|^2, |X-jY|^2) from the three coupler outputs
std::array<std::vector<double>, 4> reconstruct_from_3x3(
    const std::vector<double>& i1, const std::vector<double>& i2,
    const std::vector<double>& i3);

}  // namespace jsfr
