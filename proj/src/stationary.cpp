#include "qphase/stationary.hpp"

#include <cmath>
#include <stdexcept>

namespace qphase {

namespace {

double envelope(double q, double p, const HOStationaryState& s) {
    double gq = s.m * s.omega * s.omega * q * q;
    return std::exp(-(gq + p * p / s.m) / (2.0 * s.beta));
}

void check_support(const HOStationaryState& s, const PhaseGrid& g) {
    double worst = std::max(
        std::max(envelope(g.q_min, 0.0, s), envelope(g.q_max, 0.0, s)),
        std::max(envelope(0.0, g.p_min, s), envelope(0.0, g.p_max, s)));
    if (worst > 1e-10)
        throw std::invalid_argument(
            "ho_wavefunction: grid window too small, envelope is " +
            std::to_string(worst) + " at the edge (must be <= 1e-10)");
}

double residual_impl(const PhaseWaveFunction& psi, const HamiltonianModel& h,
                     double exclude_radius, const double* e_scalar,
                     const RealField* e_field) {
    const PhaseGrid& g = psi.grid;
    PhaseWaveFunction tpsi = apply_operator(PhaseOperator::kinetic, psi, h);
    PhaseWaveFunction upsi = apply_operator(PhaseOperator::potential_virial, psi, h);

    double amax = 0.0;
    for (const cplx& v : psi.data) amax = std::max(amax, std::abs(v));
    if (amax == 0.0) throw std::invalid_argument("stationary_residual: empty field");
    double floor = k_amplitude_floor_rel * amax;

    double r2 = exclude_radius * exclude_radius;
    double sup = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double q = g.q(i);
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            if (q * q + p * p < r2) continue;
            std::size_t k = g.idx(i, j);
            if (std::abs(psi.data[k]) <= floor) continue;
            double e = e_scalar ? *e_scalar : e_field->data[k];
            double r = std::abs(tpsi.data[k] + upsi.data[k] - e * psi.data[k]);
            sup = std::max(sup, r);
        }
    }
    return sup / amax;
}

}  // namespace

double turning_point(double energy, double m, double omega) {
    if (!(energy > 0.0))
        throw std::invalid_argument("turning_point: energy must be positive");
    return std::sqrt(2.0 * energy / m) / omega;
}

HOStationaryState make_ho_state(StandingBranch branch, int n, double m, double omega,
                                double hbar, double beta) {
    if (!(m > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("make_ho_state: m, omega, hbar must be positive");
    int n_min = branch == StandingBranch::cosine ? 0 : 1;
    if (n < n_min)
        throw std::invalid_argument(branch == StandingBranch::cosine
                                        ? "make_ho_state: cosine branch needs n >= 0"
                                        : "make_ho_state: sine branch needs n >= 1");
    HOStationaryState s;
    s.branch = branch;
    s.quantum_number = n;
    // cos(nbar pi/2) = 0 admits odd nbar; sin admits even nbar > 0.
    s.n_bar = branch == StandingBranch::cosine ? 2 * n + 1 : 2 * n;
    s.m = m;
    s.omega = omega;
    s.hbar = hbar;
    s.beta = beta <= 0.0 ? hbar * omega : beta;
    s.energy = 0.5 * s.n_bar * hbar * omega;
    s.turning_point = turning_point(s.energy, m, omega);

    // Evaluate the admission condition the same way the field samples it:
    // theta from atan2 at (a, 0), which is pi/2 to rounding, not assumed.
    double theta = std::atan2(m * omega * s.turning_point, 0.0);
    double angular = branch == StandingBranch::cosine ? std::cos(s.n_bar * theta)
                                                      : std::sin(s.n_bar * theta);
    s.boundary_value = std::abs(angular) * envelope(s.turning_point, 0.0, s);
    return s;
}

std::vector<HOStationaryState> quantize_ho(StandingBranch branch, int n_max, double m,
                                           double omega, double hbar) {
    int n_min = branch == StandingBranch::cosine ? 0 : 1;
    if (n_max < n_min) throw std::invalid_argument("quantize_ho: n_max below first level");
    std::vector<HOStationaryState> out;
    out.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n)
        out.push_back(make_ho_state(branch, n, m, omega, hbar));
    return out;
}

PhaseWaveFunction ho_wavefunction(const HOStationaryState& s, const PhaseGrid& g) {
    check_support(s, g);
    PhaseWaveFunction psi(g);
    for (int i = 0; i < g.nq; ++i) {
        double q = g.q(i);
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            double theta = std::atan2(s.m * s.omega * q, p);
            psi.at(i, j) = std::polar(envelope(q, p, s), s.n_bar * theta);
        }
    }
    normalize(psi);
    return psi;
}

PhaseWaveFunction ho_standing_wavefunction(const HOStationaryState& s,
                                           const PhaseGrid& g) {
    check_support(s, g);
    PhaseWaveFunction psi(g);
    for (int i = 0; i < g.nq; ++i) {
        double q = g.q(i);
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            double theta = std::atan2(s.m * s.omega * q, p);
            double ang = s.branch == StandingBranch::cosine
                             ? std::cos(s.n_bar * theta)
                             : std::sin(s.n_bar * theta);
            psi.at(i, j) = ang * envelope(q, p, s);
        }
    }
    normalize(psi);
    return psi;
}

double stationary_residual(const PhaseWaveFunction& psi, double energy,
                           const HamiltonianModel& h, double exclude_radius) {
    return residual_impl(psi, h, exclude_radius, &energy, nullptr);
}

double stationary_residual(const PhaseWaveFunction& psi, const RealField& energy,
                           const HamiltonianModel& h, double exclude_radius) {
    if (!psi.grid.same_layout(energy.grid))
        throw std::invalid_argument("stationary_residual: energy grid mismatch");
    return residual_impl(psi, h, exclude_radius, nullptr, &energy);
}

}  // namespace qphase
