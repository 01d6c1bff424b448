#pragma once

#include <vector>

#include "qphase/advect.hpp"
#include "qphase/field.hpp"
#include "qphase/hamiltonian.hpp"
#include "qphase/operators.hpp"

namespace qphase {

/// Central second moments of the density and the uncertainty product
/// sqrt(<q^2>) sqrt(<p^2>). First moments are subtracted, so boosted or
/// shifted states report the same product as their centered versions.
struct UncertaintyReport {
    double x2 = 0.0, p2 = 0.0;  // central second moments
    double product = 0.0;
    double margin = 0.0;  // product - hbar/2
};

UncertaintyReport uncertainty_product(const PhaseWaveFunction& psi, double hbar = 1.0);

/// Real/imaginary split of the transport equation, as residual fields.
///   continuity: |drho/dt + V . grad rho|, with drho/dt from a centered
///               advected pair at +-dt
///   energy:     |V . grad S - H| rho, with grad S = hbar Im(grad psi / psi)
/// The energy field carries the amplitude-floor mask (S is undefined where
/// psi vanishes); continuity has no such restriction.
struct StructureReport {
    RealField continuity;
    MaskedField energy;
    double continuity_max = 0.0;
    double energy_max = 0.0;
};

StructureReport structure_split(const PhaseWaveFunction& psi, const HamiltonianModel& h,
                                double dt);

/// Interior maxima of a 1-D pattern above 5% of its global peak, refined by a
/// 3-point parabola. Spacing needs at least 3 maxima; visibility needs at
/// least 2 (lowest interior minimum between the outermost counted peaks).
struct FringeReport {
    std::vector<double> maxima;
    int n_maxima = 0;
    double mean_spacing = 0.0;
    bool spacing_defined = false;
    double visibility = 0.0;
    bool visibility_defined = false;
};

FringeReport fringe_extract(const std::vector<double>& q, const std::vector<double>& rho);

/// <T> and <U> via the phase-space operators, plus their ratio. The ratio is
/// undefined (flagged) when |<U>| < 1e-12, e.g. free states.
struct VirialReport {
    double kinetic = 0.0, potential = 0.0;
    double ratio = 0.0;
    bool ratio_defined = false;
};

VirialReport virial_report(const PhaseWaveFunction& psi, const HamiltonianModel& h);

/// Orbit period from a traced characteristic, by accumulating the unwrapped
/// polar angle of (q, p) over the whole path: T = 2 pi * elapsed / |total
/// angle|. Free of zero-crossing interpolation error, so the estimate is
/// limited only by the integrator.
double estimate_orbit_period(const CharacteristicPath& path);

}  // namespace qphase
