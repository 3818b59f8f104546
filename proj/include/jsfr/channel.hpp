#pragma once

#include <array>
#include <optional>

#include "jsfr/rng.hpp"
#include "jsfr/signal.hpp"

namespace jsfr {

/// Frequency-flat polarization rotation parameters: alpha is the polar
/// angle, theta the X/Y phase difference. The induced 2x2 Jones matrix is
/// unitary.
struct SopState {
    double alpha = 0.0;
    double theta = 0.0;
};

struct LinkSpec {
    double fiber_km = 0.0;
    double beta2 = 0.0;            // s^2/m
    int pmd_sections = 15;
    double pmd_param = 0.1;        // ps/sqrt(km)
    std::optional<double> osnr_db; // empty = no noise loading
    std::uint64_t seed = 1;
};

/// beta2 from the dispersion parameter D (ps/nm/km) at the given wavelength.
double beta2_from_dispersion(double d_ps_nm_km, double lambda_nm = 1550.0);

// 2x2 complex matrix stored row-major.
using Jones2 = std::array<cplx, 4>;

Jones2 sop_matrix(const SopState& sop);
JonesSignal apply_jones(const JonesSignal& sig, const Jones2& m);
JonesSignal apply_rotation(const JonesSignal& sig, const SopState& sop);

/// All-pass chromatic dispersion: H(w) = exp(+j beta2 w^2 L / 2) on both
/// polarizations.
JonesSignal apply_cd(const JonesSignal& sig, double fiber_km, double beta2);

/// Sectioned all-order PMD emulator: random unitary rotation followed by a
/// birefringent element per section. Section DGD vectors are 3-D Gaussian
/// draws, so the total DGD is Maxwellian with the requested ensemble mean.
struct PmdEmulator {
    struct Section {
        double tau = 0.0;  // seconds
        Jones2 rotation{};
    };
    std::vector<Section> sections;

    static PmdEmulator draw(int n_sections, double mean_total_dgd_s,
                            RandomStream& rng);

    Jones2 jones_at(double freq) const;
    /// First-order DGD at `freq` from eigenvalues of the group-delay
    /// operator, probed with spacing `df`.
    double dgd_at(double freq, double df) const;
    /// Scale all section delays so dgd_at(0) equals the target exactly.
    void rescale_to_dgd(double target_dgd_s, double probe_df);
};

JonesSignal apply_pmd(const JonesSignal& sig, const PmdEmulator& em);
JonesSignal apply_pmd(const JonesSignal& sig, const LinkSpec& spec);

/// Load circularly symmetric white Gaussian noise on both polarizations so
/// the OSNR (total signal power over both-polarization noise power in the
/// reference bandwidth, 12.5 GHz = 0.1 nm) hits the target. A positive
/// power_override replaces the measured total power as the OSNR reference,
/// which pins the absolute noise level across configurations that differ
/// only in carrier power.
JonesSignal load_ase(const JonesSignal& sig, std::optional<double> osnr_db,
                     RandomStream& rng, double ref_bw_hz = 12.5e9,
                     double power_override = 0.0);

/// Receiver-side optical band-pass: brick-wall mask keeping [f_lo, f_hi].
/// Square-law detection folds every spectral component into the
/// photocurrent, so out-of-band ASE must go before the detectors.
ComplexSignal optical_bandpass(const ComplexSignal& sig, double f_lo, double f_hi);
JonesSignal optical_bandpass(const JonesSignal& sig, double f_lo, double f_hi);

}  // namespace jsfr
