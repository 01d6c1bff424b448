#pragma once

#include <vector>

#include "qphase/field.hpp"
#include "qphase/hamiltonian.hpp"
#include "qphase/operators.hpp"

namespace qphase {

/// Real standing-wave family used for quantization: cos(nbar * theta) or
/// sin(nbar * theta) times a radial envelope, with theta = atan2(m w q, p).
enum class StandingBranch { cosine, sine };

/// One admitted harmonic-oscillator level. The admission rule is that the
/// standing profile must vanish at the classical turning point (a, 0), where
/// theta = pi/2 exactly, so the cosine branch admits odd nbar and the sine
/// branch positive even nbar. boundary_value records |profile(a, 0)| as
/// actually evaluated in floating point (the profile's supremum is 1).
struct HOStationaryState {
    StandingBranch branch = StandingBranch::cosine;
    int quantum_number = 0;  // n in E = (n + 1/2) hw (cosine) or E = n hw (sine)
    int n_bar = 0;           // 2 E / (hbar omega)
    double m = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double beta = 0.0;            // envelope width, energy units
    double energy = 0.0;          // n_bar * hbar * omega / 2
    double turning_point = 0.0;   // positive root of H(q, 0) = energy
    double boundary_value = 0.0;  // |profile(turning_point, 0)|
};

/// Builds the level descriptor for quantum number n of a branch (cosine
/// n >= 0, sine n >= 1). beta <= 0 selects hbar*omega, the width at which
/// the uncertainty product saturates and the q-marginal matches the
/// configuration-space ground-state density.
HOStationaryState make_ho_state(StandingBranch branch, int n, double m, double omega,
                                double hbar, double beta = 0.0);

/// All levels with quantum number up to n_max, lowest first: cosine branch
/// n = 0..n_max, sine branch n = 1..n_max. Each carries its turning-point
/// check value.
std::vector<HOStationaryState> quantize_ho(StandingBranch branch, int n_max, double m,
                                           double omega, double hbar);

double turning_point(double energy, double m, double omega);

/// Rotating eigenfield exp(i nbar theta) * exp(-(m w^2 q^2 + p^2/m)/(2 beta)),
/// normalized on the grid. Any envelope width gives the same eigenvalue
/// n_bar*hbar*omega/2: the envelope is constant along the flow and the flow
/// advances theta at the uniform rate omega. theta comes from the
/// two-argument arctangent, which is single-valued on the whole plane for
/// integer n_bar; at the origin atan2(0,0) = 0, the limit along the p axis.
/// Requires the grid to cover the support (envelope <= 1e-10 at the window
/// edge on both axes).
PhaseWaveFunction ho_wavefunction(const HOStationaryState& s, const PhaseGrid& g);

/// Real standing profile cos/sin(nbar theta) * envelope, normalized.
/// Superposes the two counter-rotating eigenfields of +-energy and therefore
/// is NOT an eigenfield itself; its role is the turning-point admission rule.
PhaseWaveFunction ho_standing_wavefunction(const HOStationaryState& s,
                                           const PhaseGrid& g);

/// sup_k |(T + U) psi_k - E psi_k| / max|psi| over nodes above the amplitude
/// floor, where T and U are the kinetic and potential operators. Nodes with
/// q^2 + p^2 < exclude_radius^2 are skipped when exclude_radius > 0: a
/// winding field has a phase vortex at the origin where no finite-difference
/// stencil converges, so the residual is only meaningful outside a fixed
/// disk (and falls at the stencil order there).
double stationary_residual(const PhaseWaveFunction& psi, double energy,
                           const HamiltonianModel& h, double exclude_radius = 0.0);

/// Same, with a node-dependent eigenvalue (e.g. E = p^2/2m row by row for
/// superposed free waves).
double stationary_residual(const PhaseWaveFunction& psi, const RealField& energy,
                           const HamiltonianModel& h, double exclude_radius = 0.0);

}  // namespace qphase
