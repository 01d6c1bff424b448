#pragma once

#include <stdexcept>
#include <vector>

namespace qphase {

/// Hamiltonian families the engine understands.
///
/// free          H = p^2 / 2m
/// harmonic      H = p^2 / 2m + m w^2 q^2 / 2
/// tabulated     H = p^2 / 2m + U(q), U sampled on a uniform q-axis
/// relativistic  H = sqrt(c^2 p^2 + m^2 c^4) - m c^2   (free massive particle)
///
/// The analytic kinds evaluate derivatives in closed form. The tabulated kind
/// differentiates its samples once at construction (same 4th-order stencils as
/// the field derivatives, one-sided at the ends) and interpolates linearly in
/// between; outside [q_lo, q_hi] both U and dU/dq clamp to their end values,
/// so advection stage points that poke past the edge stay finite.
struct HamiltonianModel {
    enum class Kind { free, harmonic, tabulated, relativistic };

    Kind kind = Kind::free;
    double m = 1.0;      // mass (rest mass for the relativistic kind)
    double omega = 0.0;  // harmonic frequency
    double c = 0.0;      // speed of light, relativistic kind only
    double hbar = 1.0;
    int branch = +1;     // relativistic energy branch sign (+1 or -1)

    std::vector<double> tab_u;   // tabulated U samples
    std::vector<double> tab_du;  // precomputed dU/dq at the sample nodes
    double tab_lo = 0.0, tab_hi = 0.0;

    bool in_domain(double q) const {
        return kind != Kind::tabulated || (q >= tab_lo && q <= tab_hi);
    }

    double H(double q, double p) const;
    double dHdq(double q, double p) const;
    double dHdp(double q, double p) const;

    /// Advection velocity of the wave field. For the free and harmonic kinds
    /// this is the half-speed Hamiltonian flow (dq/dt, dp/dt) =
    /// ((1/2) dH/dp, -(1/2) dH/dq); for the relativistic kind the q-component
    /// is the closed-form phase velocity (see relativistic_phase_velocity)
    /// while the p-component keeps the -(1/2) dH/dq rule.
    double vq(double q, double p) const;
    double vp(double q, double p) const;
};

HamiltonianModel free_hamiltonian(double m = 1.0, double hbar = 1.0);
HamiltonianModel harmonic_hamiltonian(double m, double omega, double hbar = 1.0);
HamiltonianModel relativistic_hamiltonian(double m0, double c, double hbar = 1.0,
                                          int branch = +1);

/// u holds U at >= 5 uniformly spaced nodes spanning [q_lo, q_hi].
HamiltonianModel tabulated_hamiltonian(std::vector<double> u, double q_lo,
                                       double q_hi, double m = 1.0,
                                       double hbar = 1.0);

/// Phase velocity of a free relativistic particle as a function of momentum:
/// v = branch * (sqrt(c^2 p^2 + m0^2 c^4) - m0 c^2) / p, evaluated in the
/// rationalized form branch * c^2 p / (sqrt(...) + m0 c^2) so small |p| loses
/// no precision and the negative branch is the exact negation; v(0) = 0.
/// Odd in p.
double relativistic_phase_velocity(double p, double m0, double c, int branch = +1);

}  // namespace qphase
