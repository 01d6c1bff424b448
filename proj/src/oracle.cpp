#include "qphase/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qphase {

namespace {

constexpr double k_pi = 3.14159265358979323846;
using cplx = std::complex<double>;

double trapezoid(const std::vector<double>& f, double dq) {
    double acc = 0.0;
    std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * f[i];
    }
    return acc * dq;
}

}  // namespace

ConfigGrid1D make_config_grid(double q_min, double q_max, int n) {
    if (!(q_max > q_min))
        throw std::invalid_argument("make_config_grid: q_max must exceed q_min");
    if (n < 5) throw std::invalid_argument("make_config_grid: need at least 5 nodes");
    return {q_min, q_max, n};
}

double cn_norm_squared(const ConfigWaveFunction& psi) {
    double acc = 0.0;
    std::size_t n = psi.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * std::norm(psi.values[i]);
    }
    return acc * psi.grid.dq();
}

ConfigWaveFunction config_gaussian(const ConfigGrid1D& g, double q0, double p0,
                                   double sigma, double hbar, double m) {
    if (!(sigma > 0.0)) throw std::invalid_argument("config_gaussian: sigma > 0");
    if (!(hbar > 0.0) || !(m > 0.0))
        throw std::invalid_argument("config_gaussian: hbar and m must be positive");
    ConfigWaveFunction psi;
    psi.grid = g;
    psi.hbar = hbar;
    psi.m = m;
    psi.values.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        double d = g.q(i) - q0;
        double amp = std::exp(-d * d / (4.0 * sigma * sigma));
        double phase = p0 * d / hbar;
        psi.values[i] = amp * cplx{std::cos(phase), std::sin(phase)};
    }
    double nrm = std::sqrt(cn_norm_squared(psi));
    for (cplx& v : psi.values) v /= nrm;
    return psi;
}

ConfigWaveFunction cn_step(const ConfigWaveFunction& psi, const std::vector<double>& U,
                           double dt) {
    const ConfigGrid1D& g = psi.grid;
    if (static_cast<int>(U.size()) != g.n)
        throw std::invalid_argument("cn_step: potential sample count != grid size");
    if (!(dt > 0.0)) throw std::invalid_argument("cn_step: dt must be positive");

    int n = g.n;
    double dq = g.dq();
    double t0 = psi.hbar * psi.hbar / (psi.m * dq * dq);  // diagonal kinetic
    cplx ia{0.0, dt / (2.0 * psi.hbar)};                  // i dt / (2 hbar)

    // (I + ia H) psi_next = (I - ia H) psi on interior nodes, ends pinned to 0.
    // H tridiagonal: diag t0 + U_i, off-diagonal -t0/2.
    int ni = n - 2;
    std::vector<cplx> diag(ni), rhs(ni);
    cplx off = ia * (-0.5 * t0);
    for (int k = 0; k < ni; ++k) {
        int i = k + 1;
        cplx hd = t0 + U[i];
        diag[k] = 1.0 + ia * hd;
        cplx hpsi = hd * psi.values[i] -
                    0.5 * t0 * (psi.values[i - 1] + psi.values[i + 1]);
        rhs[k] = psi.values[i] - ia * hpsi;
    }

    // Thomas sweep.
    std::vector<cplx> cp(ni);
    cplx den = diag[0];
    if (std::abs(den) < 1e-300) throw std::runtime_error("cn_step: singular tridiagonal");
    cp[0] = off / den;
    rhs[0] /= den;
    for (int k = 1; k < ni; ++k) {
        den = diag[k] - off * cp[k - 1];
        if (std::abs(den) < 1e-300)
            throw std::runtime_error("cn_step: singular tridiagonal");
        cp[k] = off / den;
        rhs[k] = (rhs[k] - off * rhs[k - 1]) / den;
    }
    for (int k = ni - 2; k >= 0; --k) rhs[k] -= cp[k] * rhs[k + 1];

    ConfigWaveFunction out;
    out.grid = g;
    out.hbar = psi.hbar;
    out.m = psi.m;
    out.values.assign(n, cplx{});
    for (int k = 0; k < ni; ++k) out.values[k + 1] = rhs[k];
    return out;
}

CNEvolution cn_evolve(const ConfigWaveFunction& psi0, const std::vector<double>& U,
                      double dt, int n_steps) {
    if (n_steps < 0) throw std::invalid_argument("cn_evolve: n_steps >= 0");
    CNEvolution ev;
    ev.norm2.reserve(n_steps + 1);
    ev.norm2.push_back(cn_norm_squared(psi0));
    ConfigWaveFunction psi = psi0;
    for (int s = 0; s < n_steps; ++s) {
        psi = cn_step(psi, U, dt);
        ev.norm2.push_back(cn_norm_squared(psi));
    }
    ev.final_state = std::move(psi);
    return ev;
}

std::vector<double> ho_ground_density(const ConfigGrid1D& g, double m, double omega,
                                      double hbar) {
    if (!(m > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("ho_ground_density: m, omega, hbar must be positive");
    double sigma = std::sqrt(hbar / (m * omega));
    if (g.q_min > -6.0 * sigma || g.q_max < 6.0 * sigma)
        throw std::invalid_argument("ho_ground_density: grid must cover +-6 sqrt(hbar/m omega)");
    double a = m * omega / hbar;
    double peak = std::sqrt(a / k_pi);
    std::vector<double> rho(g.n);
    for (int i = 0; i < g.n; ++i) {
        double q = g.q(i);
        rho[i] = peak * std::exp(-a * q * q);
    }
    return rho;
}

DensityComparison compare_densities(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    const ConfigGrid1D& g) {
    if (a.size() != b.size() || static_cast<int>(a.size()) != g.n)
        throw std::invalid_argument("compare_densities: size mismatch");
    DensityComparison d;
    double dq = g.dq();
    std::vector<double> abs_diff(g.n), sq_diff(g.n);
    for (int i = 0; i < g.n; ++i) {
        double delta = a[i] - b[i];
        abs_diff[i] = std::abs(delta);
        sq_diff[i] = delta * delta;
        d.linf = std::max(d.linf, abs_diff[i]);
    }
    d.l1 = trapezoid(abs_diff, dq);
    d.l2 = std::sqrt(trapezoid(sq_diff, dq));
    d.centroid_diff = moments_1d(b, g).mean - moments_1d(a, g).mean;
    return d;
}

Moments1D moments_1d(const std::vector<double>& rho, const ConfigGrid1D& g) {
    if (static_cast<int>(rho.size()) != g.n)
        throw std::invalid_argument("moments_1d: size mismatch");
    double mass = 0.0, first = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double w = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        mass += w * rho[i];
        first += w * rho[i] * g.q(i);
    }
    if (mass == 0.0) throw std::invalid_argument("moments_1d: zero total mass");
    Moments1D mo;
    mo.mean = first / mass;
    double second = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double w = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        double d = g.q(i) - mo.mean;
        second += w * rho[i] * d * d;
    }
    mo.variance = second / mass;
    return mo;
}

}  // namespace qphase
