#pragma once

#include <complex>
#include <vector>

#include "qphase/grid.hpp"

namespace qphase {

using cplx = std::complex<double>;

/// Scalar real field sampled on a PhaseGrid (densities, action, diagnostics).
struct RealField {
    PhaseGrid grid;
    std::vector<double> data;

    RealField() = default;
    explicit RealField(const PhaseGrid& g) : grid(g), data(g.size(), 0.0) {}

    double& at(int i, int j) { return data[grid.idx(i, j)]; }
    double at(int i, int j) const { return data[grid.idx(i, j)]; }
};

/// Complex wave function over one phase plane. The probability density is
/// |psi|^2 and all statistics are quadratures of it; no Fourier duality
/// between the axes is implied (q and p are independent coordinates here).
struct PhaseWaveFunction {
    PhaseGrid grid;
    std::vector<cplx> data;

    PhaseWaveFunction() = default;
    explicit PhaseWaveFunction(const PhaseGrid& g) : grid(g), data(g.size(), cplx{}) {}

    cplx& at(int i, int j) { return data[grid.idx(i, j)]; }
    cplx at(int i, int j) const { return data[grid.idx(i, j)]; }
};

/// Polar split psi = amplitude * exp(i S / hbar). Nodes where the amplitude
/// is below the floor carry no usable phase; they are masked rather than
/// regularized and S is set to 0 there.
struct PolarDecomposition {
    RealField amplitude;
    RealField action;            // S, wrapped to (-pi*hbar, pi*hbar]
    std::vector<char> mask;      // 1 = valid node, 0 = below amplitude floor
    double amplitude_floor = 0.0;
};

/// Relative amplitude floor used for masking throughout: nodes with
/// |psi| <= 1e-12 * max|psi| are treated as carrying no phase information.
inline constexpr double k_amplitude_floor_rel = 1e-12;

// --- quadrature -------------------------------------------------------------

/// Weighted sum * cell area of an arbitrary node function; the weights follow
/// the grid's boundary rule (trapezoid for truncate, rectangle for periodic q).
double integrate(const RealField& f);

/// Integral of |psi|^2 over the window.
double norm_squared(const PhaseWaveFunction& psi);

/// Scales psi to unit norm. Throws if the norm is too small to divide by.
void normalize(PhaseWaveFunction& psi);

/// Density rho = |psi|^2 as a field.
RealField density(const PhaseWaveFunction& psi);

/// Mean value of a multiplicative observable F(q,p): integral of F * |psi|^2.
/// The state is expected to be normalized; no implicit renormalization.
double expectation(const PhaseWaveFunction& psi, const RealField& F);

/// Same, with F given as a callable (q,p) -> double.
template <class Fn>
double expectation_fn(const PhaseWaveFunction& psi, Fn&& F) {
    const PhaseGrid& g = psi.grid;
    double acc = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.np; ++j) {
            double a = std::norm(psi.at(i, j));
            row += g.weight(i, j) * F(g.q(i), g.p(j)) * a;
        }
        acc += row;
    }
    return acc * g.cell_area();
}

// --- marginals ---------------------------------------------------------------

/// rho_q(q) = integral over p of |psi|^2, trapezoid in p. Returns nq values.
std::vector<double> marginal_q(const PhaseWaveFunction& psi);

/// rho_p(p) = integral over q of |psi|^2 with the grid's q rule. Returns np values.
std::vector<double> marginal_p(const PhaseWaveFunction& psi);

// --- polar form ---------------------------------------------------------------

/// psi = amplitude * exp(i S / hbar). Amplitude must be non-negative.
PhaseWaveFunction assemble_polar(const RealField& amplitude, const RealField& action,
                                 double hbar);

/// Inverse of assemble_polar up to 2*pi*hbar wraps on unmasked nodes.
PolarDecomposition decompose_polar(const PhaseWaveFunction& psi, double hbar);

}  // namespace qphase
