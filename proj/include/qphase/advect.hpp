#pragma once

#include <array>
#include <vector>

#include "qphase/field.hpp"
#include "qphase/hamiltonian.hpp"

namespace qphase {

/// One forward-traced trajectory of the advection flow dz/dt = (Vq, Vp),
/// classical RK4 with fixed step.
struct CharacteristicPath {
    std::vector<double> t, q, p;
};

CharacteristicPath trace_characteristic(const HamiltonianModel& h, double q0, double p0,
                                        double dt, int n_steps);

/// Departure point of a node under one backward RK4 substep of length dt
/// (integrates dz/ds = -V(z) once). Returns {q_d, p_d}.
std::array<double, 2> departure_point(const HamiltonianModel& h, double q, double p,
                                      double dt);

struct AdvectOptions {
    bool bilinear = false;  // fall back to bilinear interpolation (diagnostic)
};

/// Interpolates psi at an arbitrary phase point. Catmull-Rom bicubic by
/// default; outside the window the field reads 0 (truncate) or wraps in q
/// (periodic_q). Exposed for tests.
cplx sample_field(const PhaseWaveFunction& psi, double q, double p,
                  bool bilinear = false);

/// One semi-Lagrangian step: every node takes the interpolated field value at
/// its departure point. Unconditionally stable; accuracy is set by dt (via the
/// departure trace) and the interpolation order.
PhaseWaveFunction advect_step(const PhaseWaveFunction& psi, const HamiltonianModel& h,
                              double dt, const AdvectOptions& opt = {});

struct EvolveOptions {
    AdvectOptions advect;
    int snapshot_stride = 0;        // keep a snapshot every k steps (0 = none)
    bool keep_final = true;         // always keep the final state
    double cfl_soft_limit = 2.0;    // warn when max displacement exceeds this many cells
};

struct EvolutionRecord {
    std::vector<double> times;       // time after step k (times[0] = 0)
    std::vector<double> norm2;       // norm^2 series aligned with times
    std::vector<double> snapshot_times;
    std::vector<PhaseWaveFunction> snapshots;
    bool cfl_warning = false;
    double max_cells_per_step = 0.0;
    PhaseWaveFunction final_state;
};

/// Fixed-step evolution with a norm^2 audit per step and a soft step-size
/// warning (semi-Lagrangian schemes do not blow up past it, they just smear).
EvolutionRecord evolve(const PhaseWaveFunction& psi0, const HamiltonianModel& h,
                       double dt, int n_steps, const EvolveOptions& opt = {});

}  // namespace qphase
