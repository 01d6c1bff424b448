#pragma once

#include "qphase/field.hpp"
#include "qphase/hamiltonian.hpp"

namespace qphase {

/// Differential operators realized on the grid. Energy is separate because it
/// needs two temporally adjacent snapshots (it is a time derivative).
enum class PhaseOperator {
    momentum,          // -i hbar d/dq
    position,          // -i hbar d/dp
    kinetic,           // -(i hbar / 2) (dH/dp) d/dq
    potential_virial,  // +(i hbar / 2) (dH/dq) d/dp
};

/// A real diagnostic field plus a validity mask (1 = usable). Nodes are masked
/// where the defining division by psi would be dominated by noise.
struct MaskedField {
    RealField value;
    std::vector<char> mask;
};

/// 4th-order first derivative along q. Periodic grids wrap; truncating grids
/// use one-sided 5-node stencils on the outer two layers (see
/// uses_one_sided_q). Works for complex fields.
PhaseWaveFunction diff_q(const PhaseWaveFunction& psi);
PhaseWaveFunction diff_p(const PhaseWaveFunction& psi);
RealField diff_q(const RealField& f);
RealField diff_p(const RealField& f);

/// True when the q-stencil at column i had to lean on the boundary (the two
/// outermost layers of a truncating axis). Interior rows use the centered
/// stencil everywhere.
bool uses_one_sided_q(const PhaseGrid& g, int i);
bool uses_one_sided_p(const PhaseGrid& g, int j);

/// L-hat psi for the spatial operators above.
PhaseWaveFunction apply_operator(PhaseOperator op, const PhaseWaveFunction& psi,
                                 const HamiltonianModel& h);

/// Energy operator i hbar d/dt via a centered snapshot pair:
/// (i hbar / (2 dt)) (psi_next - psi_prev).
PhaseWaveFunction apply_energy(const PhaseWaveFunction& psi_prev,
                               const PhaseWaveFunction& psi_next, double dt,
                               double hbar);

/// Pointwise observable Re((L psi)/psi); masked below the amplitude floor.
MaskedField observable(const PhaseWaveFunction& Lpsi, const PhaseWaveFunction& psi);

/// Mean value Re( integral of conj(psi) * (L psi) ).
double expectation_op(const PhaseWaveFunction& psi, const PhaseWaveFunction& Lpsi);

/// Difference between the configuration potential and what the phase-space
/// field feels: U_q = Re( (i hbar/2) (dH/dq) (d_p psi)/psi ) - U(q).
/// Identically zero for potential-free Hamiltonians.
MaskedField quantum_potential(const PhaseWaveFunction& psi, const HamiltonianModel& h);

/// F_q = -d(U_q)/dq, with the mask widened to nodes whose stencil touches a
/// masked node.
MaskedField quantum_force(const MaskedField& uq);

/// Convenience: quantum_force(quantum_potential(psi, h)).
MaskedField quantum_force(const PhaseWaveFunction& psi, const HamiltonianModel& h);

/// Double-application diagnostic for the momentum operator. p_tilde is the
/// complex node ratio (p-hat psi)/psi; squaring its real part is NOT the same
/// as applying p-hat twice, and deviation_max quantifies the gap
/// |(p-hat^2 psi)/psi - (Re p_tilde)^2| over unmasked nodes.
struct MomentumConsistencyReport {
    MaskedField re_ptilde;
    MaskedField im_ptilde;
    MaskedField deviation;   // |(p-hat^2 psi)/psi - (Re p_tilde)^2|
    double max_im_ptilde = 0.0;
    double max_deviation = 0.0;
    double mean_psq = 0.0;   // <psi| p-hat^2 |psi>, real part
};

MomentumConsistencyReport momentum_consistency_diagnostic(const PhaseWaveFunction& psi,
                                                          const HamiltonianModel& h);

}  // namespace qphase
