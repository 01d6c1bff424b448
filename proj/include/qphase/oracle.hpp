#pragma once

#include <complex>
#include <vector>

namespace qphase {

/// Everything in this header lives in 1-D configuration space and is solved
/// with machinery independent of the phase-space engine: a Crank-Nicolson
/// scheme for i hbar dpsi/dt = -(hbar^2/2m) psi'' + U psi with Dirichlet zero
/// ends, plus analytic references. It exists to cross-check the phase-space
/// results, so it deliberately shares no code with them.

struct ConfigGrid1D {
    double q_min = 0.0, q_max = 0.0;
    int n = 0;

    double dq() const { return (q_max - q_min) / (n - 1); }
    double q(int i) const { return q_min + i * dq(); }
};

ConfigGrid1D make_config_grid(double q_min, double q_max, int n);

struct ConfigWaveFunction {
    ConfigGrid1D grid;
    std::vector<std::complex<double>> values;
    double hbar = 1.0, m = 1.0;
};

/// Trapezoid integral of |psi|^2.
double cn_norm_squared(const ConfigWaveFunction& psi);

/// Normalized Gaussian exp(-(q-q0)^2/(4 sigma^2) + i p0 (q-q0)/hbar).
ConfigWaveFunction config_gaussian(const ConfigGrid1D& g, double q0, double p0,
                                   double sigma, double hbar = 1.0, double m = 1.0);

/// One Crank-Nicolson step under potential samples U (size n). Unitary to
/// rounding; unconditionally stable.
ConfigWaveFunction cn_step(const ConfigWaveFunction& psi, const std::vector<double>& U,
                           double dt);

struct CNEvolution {
    ConfigWaveFunction final_state;
    std::vector<double> norm2;  // n_steps + 1 entries, trapezoid norm each step
};

CNEvolution cn_evolve(const ConfigWaveFunction& psi0, const std::vector<double>& U,
                      double dt, int n_steps);

/// Analytic |ground state|^2 of the harmonic oscillator:
/// sqrt(m omega / (pi hbar)) exp(-m omega q^2 / hbar).
/// The grid must cover +-6 sqrt(hbar / m omega).
std::vector<double> ho_ground_density(const ConfigGrid1D& g, double m, double omega,
                                      double hbar);

struct DensityComparison {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    double centroid_diff = 0.0;  // centroid(b) - centroid(a)
};

DensityComparison compare_densities(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    const ConfigGrid1D& g);

struct Moments1D {
    double mean = 0.0, variance = 0.0;
};

/// Self-normalizing first and second central moments of a density sample.
Moments1D moments_1d(const std::vector<double>& rho, const ConfigGrid1D& g);

}  // namespace qphase
