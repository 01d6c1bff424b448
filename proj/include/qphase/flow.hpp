#pragma once

#include "qphase/field.hpp"
#include "qphase/hamiltonian.hpp"

namespace qphase {

/// The advection velocity field (Vq, Vp) sampled on the grid. Used for
/// diagnostics and output; the advection itself evaluates the model's
/// analytic flow at off-grid points.
struct PhaseFlowField {
    PhaseGrid grid;
    std::vector<double> vq;
    std::vector<double> vp;

    PhaseFlowField() = default;
    explicit PhaseFlowField(const PhaseGrid& g)
        : grid(g), vq(g.size(), 0.0), vp(g.size(), 0.0) {}
};

PhaseFlowField build_flow(const HamiltonianModel& h, const PhaseGrid& grid);

/// Max |dVq/dq + dVp/dp| over interior nodes, centered differences.
/// The Hamiltonian flows here are divergence-free by construction, so this is
/// a discretization sanity number, not a physics result.
double divergence_max(const PhaseFlowField& flow);

/// Largest speed component on the grid, in cells per unit time
/// (max(|Vq|/dq, |Vp|/dp)); used for the soft step-size warning.
double max_cell_rate(const PhaseFlowField& flow);

}  // namespace qphase
