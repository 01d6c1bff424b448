#pragma once

#include <string>
#include <vector>

#include "qphase/advect.hpp"
#include "qphase/field.hpp"
#include "qphase/hamiltonian.hpp"

namespace qphase {

/// Normalized free wave: exp(i p0 q / hbar) times a Gaussian momentum profile
/// centered on the grid row nearest p0. The profile width is sigma_p_cells
/// grid cells (a regularization so the state is normalizable on a finite
/// grid); sigma_p_cells = 0 puts everything on that single row. Rejects p0
/// whose wavelength 2 pi hbar / |p0| falls under 4 grid cells.
PhaseWaveFunction plane_wave(const PhaseGrid& g, double p0,
                             double sigma_p_cells = 3.0, double hbar = 1.0);

/// Normalized Gaussian phase-space packet centered at (q0, p0) with marginal
/// widths sigma_q, sigma_p and action S = p (q - q0). Rejects widths below
/// the Heisenberg floor sigma_q sigma_p >= hbar / 2.
struct PacketSpec {
    double q0 = 0.0;
    double p0 = 0.0;
    double sigma_q = 1.0;
    double sigma_p = 0.5;
    double hbar = 1.0;
};

PhaseWaveFunction gaussian_packet(const PhaseGrid& g, const PacketSpec& spec);

/// Two Gaussian slit packets a distance `separation` apart, both carrying
/// momentum p0 toward a screen at distance `screen_distance`.
struct SlitSpec {
    double separation = 1.5;       // center-to-center distance d
    double sigma_slit = 0.6;       // per-slit spatial width
    double sigma_p = 0.0;          // momentum width; 0 picks 2 hbar / sigma_slit
    double p0 = 1.0;               // incoming momentum, must be nonzero
    double screen_distance = 1.5;  // L, used by the fringe prediction
    double hbar = 1.0;
};

struct TwoSlitState {
    PhaseWaveFunction psi1, psi2;  // unit-norm slit packets
    PhaseWaveFunction psi_sup;     // (psi1 + psi2) / norm
    double sup_scale = 1.0;        // psi_sup = sup_scale * (psi1 + psi2)
    bool overlap_warning = false;  // separation < 2 sigma_slit
};

TwoSlitState two_slit_superpose(const PhaseGrid& g, const SlitSpec& spec);

/// Stationary-phase fringe spacing at the screen, wavelength * L / d with
/// wavelength 2 pi hbar / p0. Half-speed transport is already folded in:
/// reaching the screen takes t = 2 m L / p0, and spacing = 2 pi hbar t /
/// (2 m d) recovers the same number.
double predicted_fringe_spacing(const SlitSpec& spec);

/// Time for a slit packet moving at p0 / (2 m) to cover screen_distance.
double screen_time(const SlitSpec& spec, double m = 1.0);

/// Interference pattern at the screen. The two slit fields evolve separately
/// (scaled so their sum is the unit-norm superposition) and the q-marginals
/// are combined:
///   intensity = single1 + single2 + cross      (exact by construction)
///   gamma     = cross / (2 sqrt(single1 single2)), zeroed where either
///               envelope has dropped below 1e-6 of its peak.
/// gamma strips the single-slit envelopes off the oscillation, so its maxima
/// locate fringes without envelope-tilt bias.
struct InterferenceResult {
    std::vector<double> q;
    std::vector<double> intensity;
    std::vector<double> single1, single2;
    std::vector<double> cross;
    std::vector<double> gamma;
    double edge_mass_fraction = 0.0;  // intensity mass within 4 cells of a q edge
};

InterferenceResult interference_pattern(const TwoSlitState& state,
                                        const HamiltonianModel& h, double t_screen,
                                        int n_steps, const EvolveOptions& opt = {});

/// Named test states for the uncertainty-relation sweep: Gaussian packets at
/// and above the Heisenberg floor, HO eigenstates (n <= 3) at several widths,
/// and two-packet cat states. All normalized on the given grid, which should
/// span roughly [-12, 12]^2 so every tail clears the edge.
struct NamedState {
    std::string name;
    PhaseWaveFunction psi;
    bool expect_saturating = false;  // product should equal hbar/2 to quadrature
};

std::vector<NamedState> uncertainty_corpus(const PhaseGrid& g, double hbar = 1.0);

}  // namespace qphase
