#include "qphase/hamiltonian.hpp"

#include <cmath>

namespace qphase {

namespace {

// Linear interpolation on a uniform table, clamped at the ends.
double tab_interp(const std::vector<double>& t, double lo, double hi, double q) {
    int n = static_cast<int>(t.size());
    double h = (hi - lo) / (n - 1);
    double x = (q - lo) / h;
    if (x <= 0.0) return t.front();
    if (x >= n - 1) return t.back();
    int i = static_cast<int>(x);
    double a = x - i;
    return (1.0 - a) * t[i] + a * t[i + 1];
}

}  // namespace

double HamiltonianModel::H(double q, double p) const {
    switch (kind) {
        case Kind::free:
            return p * p / (2.0 * m);
        case Kind::harmonic:
            return p * p / (2.0 * m) + 0.5 * m * omega * omega * q * q;
        case Kind::tabulated:
            return p * p / (2.0 * m) + tab_interp(tab_u, tab_lo, tab_hi, q);
        case Kind::relativistic: {
            double e = std::sqrt(c * c * p * p + m * m * c * c * c * c);
            return branch * e - m * c * c;
        }
    }
    return 0.0;
}

double HamiltonianModel::dHdq(double q, double /*p*/) const {
    switch (kind) {
        case Kind::free:
        case Kind::relativistic:
            return 0.0;
        case Kind::harmonic:
            return m * omega * omega * q;
        case Kind::tabulated:
            return tab_interp(tab_du, tab_lo, tab_hi, q);
    }
    return 0.0;
}

double HamiltonianModel::dHdp(double /*q*/, double p) const {
    switch (kind) {
        case Kind::free:
        case Kind::harmonic:
        case Kind::tabulated:
            return p / m;
        case Kind::relativistic: {
            double e = std::sqrt(c * c * p * p + m * m * c * c * c * c);
            return branch * c * c * p / e;
        }
    }
    return 0.0;
}

double HamiltonianModel::vq(double q, double p) const {
    if (kind == Kind::relativistic) return relativistic_phase_velocity(p, m, c, branch);
    return 0.5 * dHdp(q, p);
}

double HamiltonianModel::vp(double q, double p) const {
    return -0.5 * dHdq(q, p);
}

HamiltonianModel free_hamiltonian(double m, double hbar) {
    if (!(m > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("free_hamiltonian: m and hbar must be positive");
    HamiltonianModel h;
    h.kind = HamiltonianModel::Kind::free;
    h.m = m;
    h.hbar = hbar;
    return h;
}

HamiltonianModel harmonic_hamiltonian(double m, double omega, double hbar) {
    if (!(m > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("harmonic_hamiltonian: m, omega, hbar must be positive");
    HamiltonianModel h;
    h.kind = HamiltonianModel::Kind::harmonic;
    h.m = m;
    h.omega = omega;
    h.hbar = hbar;
    return h;
}

HamiltonianModel tabulated_hamiltonian(std::vector<double> u, double q_lo,
                                       double q_hi, double m, double hbar) {
    if (!(m > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("tabulated_hamiltonian: m and hbar must be positive");
    if (u.size() < 5)
        throw std::invalid_argument("tabulated_hamiltonian: need at least 5 samples");
    if (!(q_hi > q_lo))
        throw std::invalid_argument("tabulated_hamiltonian: q_hi must exceed q_lo");
    HamiltonianModel h;
    h.kind = HamiltonianModel::Kind::tabulated;
    h.m = m;
    h.hbar = hbar;
    h.tab_lo = q_lo;
    h.tab_hi = q_hi;

    int n = static_cast<int>(u.size());
    double dq = (q_hi - q_lo) / (n - 1);
    std::vector<double> du(u.size());
    double inv12 = 1.0 / (12.0 * dq);
    du[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * inv12;
    du[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * inv12;
    for (int i = 2; i < n - 2; ++i)
        du[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) * inv12;
    du[n - 2] = -(-3.0 * u[n - 1] - 10.0 * u[n - 2] + 18.0 * u[n - 3] - 6.0 * u[n - 4] +
                  u[n - 5]) * inv12;
    du[n - 1] = -(-25.0 * u[n - 1] + 48.0 * u[n - 2] - 36.0 * u[n - 3] +
                  16.0 * u[n - 4] - 3.0 * u[n - 5]) * inv12;

    h.tab_u = std::move(u);
    h.tab_du = std::move(du);
    return h;
}

HamiltonianModel relativistic_hamiltonian(double m0, double c, double hbar, int branch) {
    if (!(m0 > 0.0) || !(c > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("relativistic_hamiltonian: m0, c, hbar must be positive");
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("relativistic_hamiltonian: branch must be +1 or -1");
    HamiltonianModel h;
    h.kind = HamiltonianModel::Kind::relativistic;
    h.m = m0;
    h.c = c;
    h.hbar = hbar;
    h.branch = branch;
    return h;
}

double relativistic_phase_velocity(double p, double m0, double c, int branch) {
    if (p == 0.0) return 0.0;
    double e = std::sqrt(c * c * p * p + m0 * m0 * c * c * c * c);
    // (e - m0 c^2)/p rationalized: avoids cancellation for |p| << m0 c.
    // The negative-energy branch carries the exactly negated velocity.
    return branch * c * c * p / (e + m0 * c * c);
}

}  // namespace qphase
