#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "jsfr/frontend.hpp"
#include "jsfr/signal.hpp"

namespace jsfr {

/// Per-branch CSPR multipliers (units of the receiver's required CSPR) for
/// one front end at one received SOP.
struct CsprProfile {
    Scheme scheme = Scheme::Coupler2x2;
    std::vector<std::string> labels;
    std::vector<double> values;  // dimensionless multipliers of C_req
    double c_req_db = 6.0;
};

/// Single-polarization field-recovery engine. Only the Kramers-Kronig kind
/// is implemented; the enum is the extension point for other receivers.
struct GrSpec {
    enum class Kind { Kkr };
    Kind kind = Kind::Kkr;
    double c_req_db = 6.0;
    int working_sps = 8;
};

// Closed-form branch CSPR multipliers versus the rotation (alpha, theta).
// Branch order matches split_branches labels.
std::array<double, 4> cspr_2x2(double alpha, double theta);
std::array<double, 4> cspr_hybrid(double alpha, double theta);
std::array<double, 3> cspr_3x3(double alpha, double theta);

CsprProfile cspr_profile(Scheme scheme, double alpha, double theta,
                         double c_req_db = 6.0);

/// Second-largest element; needs at least two values.
double second_max(std::span<const double> values);

enum class SelectMode { Top2, All };

/// Branch labels to hand to the recovery stage. Top2 picks the two largest
/// CSPRs, ties broken by label order.
std::vector<std::string> select_branches(const CsprProfile& profile,
                                         SelectMode mode);

/// Kramers-Kronig field recovery from one photocurrent:
/// sqrt(I) * exp(j*H{ln(I)/2}), frequency-shifted by -carrier_offset so the
/// signal band lands at baseband (the tone moves to carrier_offset). Runs at
/// working_sps * baud; negative samples are clamped to a small positive
/// floor before the log.
ComplexSignal kkr_recover(const std::vector<double>& current, const GrSpec& gr,
                          double carrier_offset, double rate, double baud);

/// Measured CSPR of an optical field in dB: tone power in a narrow window
/// around carrier_offset versus the remaining in-band power. Capped to
/// [-60, +60] dB.
double estimate_cspr(const ComplexSignal& field, double carrier_offset);

/// Measured CSPR from a photocurrent. The DC line carries (C+S) self-beat
/// power while the beat band carries 2*C*S + S^2, so the raw spectral ratio
/// R = (rho+1)^2 / (2*rho+1) is inverted for rho.
double estimate_cspr(const std::vector<double>& current, double rate);

}  // namespace jsfr
