#include "qphase/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qphase {

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

UncertaintyReport uncertainty_product(const PhaseWaveFunction& psi, double hbar) {
    double mass = norm_squared(psi);
    if (mass <= 0.0)
        throw std::invalid_argument("uncertainty_product: state has zero norm");
    double mq = expectation_fn(psi, [](double q, double) { return q; }) / mass;
    double mp = expectation_fn(psi, [](double, double p) { return p; }) / mass;

    UncertaintyReport r;
    r.x2 = expectation_fn(psi, [mq](double q, double) { return (q - mq) * (q - mq); }) /
           mass;
    r.p2 = expectation_fn(psi, [mp](double, double p) { return (p - mp) * (p - mp); }) /
           mass;
    r.product = std::sqrt(r.x2) * std::sqrt(r.p2);
    r.margin = r.product - 0.5 * hbar;
    return r;
}

StructureReport structure_split(const PhaseWaveFunction& psi, const HamiltonianModel& h,
                                double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("structure_split: dt must be positive");
    const PhaseGrid& g = psi.grid;

    RealField rho = density(psi);
    RealField drq = diff_q(rho);
    RealField drp = diff_p(rho);
    RealField rho_fwd = density(advect_step(psi, h, dt));
    RealField rho_bwd = density(advect_step(psi, h, -dt));

    StructureReport rep;
    rep.continuity = RealField(g);
    rep.energy.value = RealField(g);
    rep.energy.mask.assign(g.size(), 0);

    PhaseWaveFunction dq_psi = diff_q(psi);
    PhaseWaveFunction dp_psi = diff_p(psi);
    double amax = 0.0;
    for (const cplx& v : psi.data) amax = std::max(amax, std::abs(v));
    double floor = k_amplitude_floor_rel * amax;

    for (int i = 0; i < g.nq; ++i) {
        double q = g.q(i);
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            std::size_t k = g.idx(i, j);
            double vq = h.vq(q, p), vp = h.vp(q, p);

            double ddt = (rho_fwd.data[k] - rho_bwd.data[k]) / (2.0 * dt);
            double c = std::abs(ddt + vq * drq.data[k] + vp * drp.data[k]);
            rep.continuity.data[k] = c;
            rep.continuity_max = std::max(rep.continuity_max, c);

            if (std::abs(psi.data[k]) > floor) {
                cplx inv = 1.0 / psi.data[k];
                double sq = h.hbar * (dq_psi.data[k] * inv).imag();
                double sp = h.hbar * (dp_psi.data[k] * inv).imag();
                double e = std::abs(vq * sq + vp * sp - h.H(q, p)) * rho.data[k];
                rep.energy.value.data[k] = e;
                rep.energy.mask[k] = 1;
                rep.energy_max = std::max(rep.energy_max, e);
            }
        }
    }
    return rep;
}

FringeReport fringe_extract(const std::vector<double>& q, const std::vector<double>& rho) {
    if (q.size() != rho.size())
        throw std::invalid_argument("fringe_extract: axis/field size mismatch");
    int n = static_cast<int>(q.size());
    if (n < 5) throw std::invalid_argument("fringe_extract: need at least 5 samples");

    double peak = 0.0;
    for (double v : rho) peak = std::max(peak, v);
    double threshold = 0.05 * peak;

    FringeReport rep;
    std::vector<int> peak_idx;
    for (int i = 1; i < n - 1; ++i) {
        if (rho[i] <= rho[i - 1] || rho[i] <= rho[i + 1]) continue;
        if (rho[i] < threshold) continue;
        double denom = rho[i - 1] - 2.0 * rho[i] + rho[i + 1];
        double offset = denom != 0.0 ? 0.5 * (rho[i - 1] - rho[i + 1]) / denom : 0.0;
        rep.maxima.push_back(q[i] + offset * (q[i + 1] - q[i]));
        peak_idx.push_back(i);
    }
    rep.n_maxima = static_cast<int>(rep.maxima.size());

    if (rep.n_maxima >= 3) {
        rep.mean_spacing =
            (rep.maxima.back() - rep.maxima.front()) / (rep.n_maxima - 1);
        rep.spacing_defined = true;
    }
    if (rep.n_maxima >= 2) {
        double imax = 0.0;
        for (int i : peak_idx) imax = std::max(imax, rho[i]);
        double imin = imax;
        for (int i = peak_idx.front(); i <= peak_idx.back(); ++i)
            imin = std::min(imin, rho[i]);
        if (imax + imin > 0.0) {
            rep.visibility = (imax - imin) / (imax + imin);
            rep.visibility_defined = true;
        }
    }
    return rep;
}

VirialReport virial_report(const PhaseWaveFunction& psi, const HamiltonianModel& h) {
    VirialReport r;
    r.kinetic = expectation_op(psi, apply_operator(PhaseOperator::kinetic, psi, h));
    r.potential =
        expectation_op(psi, apply_operator(PhaseOperator::potential_virial, psi, h));
    if (std::abs(r.potential) >= 1e-12) {
        r.ratio = r.kinetic / r.potential;
        r.ratio_defined = true;
    }
    return r;
}

double estimate_orbit_period(const CharacteristicPath& path) {
    std::size_t n = path.t.size();
    if (n < 3) throw std::invalid_argument("estimate_orbit_period: path too short");
    double total = 0.0;
    double prev = std::atan2(path.p[0], path.q[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double a = std::atan2(path.p[k], path.q[k]);
        double d = a - prev;
        while (d > k_pi) d -= 2.0 * k_pi;
        while (d <= -k_pi) d += 2.0 * k_pi;
        total += d;
        prev = a;
    }
    if (total == 0.0)
        throw std::invalid_argument("estimate_orbit_period: no net rotation");
    return 2.0 * k_pi * (path.t.back() - path.t.front()) / std::abs(total);
}

}  // namespace qphase
