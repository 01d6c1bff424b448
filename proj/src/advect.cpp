#include "qphase/advect.hpp"

#include <cmath>
#include <stdexcept>

#include "qphase/parallel.hpp"

namespace qphase {

namespace {

// Catmull-Rom weights for a fractional offset a in [0,1] on the 4-node
// stencil {i-1, i, i+1, i+2}. Partition of unity; a = 0 reads node i exactly.
inline void cr_weights(double a, double w[4]) {
    double a2 = a * a, a3 = a2 * a;
    w[0] = 0.5 * (-a3 + 2.0 * a2 - a);
    w[1] = 0.5 * (3.0 * a3 - 5.0 * a2 + 2.0);
    w[2] = 0.5 * (-3.0 * a3 + 4.0 * a2 + a);
    w[3] = 0.5 * (a3 - a2);
}

inline void lin_weights(double a, double w[4]) {
    w[0] = 0.0;
    w[1] = 1.0 - a;
    w[2] = a;
    w[3] = 0.0;
}

struct AxisSample {
    int idx[4];  // -1 reads as zero (outside a truncating axis)
    double w[4];
};

inline void axis_truncate(double x, int n, bool bilinear, AxisSample& s) {
    double fl = std::floor(x);
    double a = x - fl;
    int i1 = static_cast<int>(fl);
    (bilinear ? lin_weights : cr_weights)(a, s.w);
    for (int k = 0; k < 4; ++k) {
        int i = i1 - 1 + k;
        s.idx[k] = (i >= 0 && i < n) ? i : -1;
    }
}

inline void axis_periodic(double x, int n, bool bilinear, AxisSample& s) {
    x = std::fmod(x, static_cast<double>(n));
    if (x < 0.0) x += n;
    double fl = std::floor(x);
    double a = x - fl;
    int i1 = static_cast<int>(fl);
    if (i1 >= n) i1 -= n;  // guard fmod landing exactly on n
    (bilinear ? lin_weights : cr_weights)(a, s.w);
    for (int k = 0; k < 4; ++k) {
        int i = i1 - 1 + k;
        if (i < 0) i += n;
        if (i >= n) i -= n;
        s.idx[k] = i;
    }
}

// 1-D interpolation along q at a fixed p row; used when the flow leaves p
// untouched so the p component of the stencil is exact.
inline cplx sample_q_line(const PhaseWaveFunction& psi, double x, int j, bool bilinear) {
    const PhaseGrid& g = psi.grid;
    AxisSample sx;
    if (g.periodic_q())
        axis_periodic(x, g.nq, bilinear, sx);
    else
        axis_truncate(x, g.nq, bilinear, sx);
    cplx acc{};
    for (int k = 0; k < 4; ++k) {
        if (sx.w[k] == 0.0 || sx.idx[k] < 0) continue;
        acc += sx.w[k] * psi.at(sx.idx[k], j);
    }
    return acc;
}

}  // namespace

cplx sample_field(const PhaseWaveFunction& psi, double q, double p, bool bilinear) {
    const PhaseGrid& g = psi.grid;
    double x = (q - g.q_min) / g.dq;
    double y = (p - g.p_min) / g.dp;

    AxisSample sx, sy;
    if (g.periodic_q())
        axis_periodic(x, g.nq, bilinear, sx);
    else
        axis_truncate(x, g.nq, bilinear, sx);
    axis_truncate(y, g.np, bilinear, sy);

    cplx acc{};
    for (int a = 0; a < 4; ++a) {
        if (sx.w[a] == 0.0 || sx.idx[a] < 0) continue;
        cplx row{};
        for (int b = 0; b < 4; ++b) {
            if (sy.w[b] == 0.0 || sy.idx[b] < 0) continue;
            row += sy.w[b] * psi.at(sx.idx[a], sy.idx[b]);
        }
        acc += sx.w[a] * row;
    }
    return acc;
}

std::array<double, 2> departure_point(const HamiltonianModel& h, double q, double p,
                                      double dt) {
    // One classical RK4 step of dz/ds = -V(z) over [0, dt].
    double k1q = -h.vq(q, p), k1p = -h.vp(q, p);
    double q2 = q + 0.5 * dt * k1q, p2 = p + 0.5 * dt * k1p;
    double k2q = -h.vq(q2, p2), k2p = -h.vp(q2, p2);
    double q3 = q + 0.5 * dt * k2q, p3 = p + 0.5 * dt * k2p;
    double k3q = -h.vq(q3, p3), k3p = -h.vp(q3, p3);
    double q4 = q + dt * k3q, p4 = p + dt * k3p;
    double k4q = -h.vq(q4, p4), k4p = -h.vp(q4, p4);
    return {q + dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q),
            p + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
}

CharacteristicPath trace_characteristic(const HamiltonianModel& h, double q0, double p0,
                                        double dt, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("trace_characteristic: n_steps >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("trace_characteristic: dt must be positive");
    CharacteristicPath path;
    path.t.reserve(n_steps + 1);
    path.q.reserve(n_steps + 1);
    path.p.reserve(n_steps + 1);
    double q = q0, p = p0;
    path.t.push_back(0.0);
    path.q.push_back(q);
    path.p.push_back(p);
    for (int s = 0; s < n_steps; ++s) {
        double k1q = h.vq(q, p), k1p = h.vp(q, p);
        double q2 = q + 0.5 * dt * k1q, p2 = p + 0.5 * dt * k1p;
        double k2q = h.vq(q2, p2), k2p = h.vp(q2, p2);
        double q3 = q + 0.5 * dt * k2q, p3 = p + 0.5 * dt * k2p;
        double k3q = h.vq(q3, p3), k3p = h.vp(q3, p3);
        double q4 = q + dt * k3q, p4 = p + dt * k3p;
        double k4q = h.vq(q4, p4), k4p = h.vp(q4, p4);
        q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if (!h.in_domain(q))
            throw std::domain_error("trace_characteristic: left the tabulated domain");
        path.t.push_back((s + 1) * dt);
        path.q.push_back(q);
        path.p.push_back(p);
    }
    return path;
}

PhaseWaveFunction advect_step(const PhaseWaveFunction& psi, const HamiltonianModel& h,
                              double dt, const AdvectOptions& opt) {
    const PhaseGrid& g = psi.grid;
    PhaseWaveFunction out(g);

    // Flows with dH/dq = 0 never move p, and their q velocity depends on p
    // alone; the departure offset is then constant along each p row and the
    // stencil collapses to one dimension.
    const bool q_only = (h.kind == HamiltonianModel::Kind::free ||
                         h.kind == HamiltonianModel::Kind::relativistic);

    if (q_only) {
        std::vector<double> xdep(g.np);
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            xdep[j] = -h.vq(0.0, p) * dt / g.dq;  // offset in cells, row-constant
        }
        parallel_for_rows(g.nq, [&](int ib, int ie) {
            for (int i = ib; i < ie; ++i) {
                for (int j = 0; j < g.np; ++j) {
                    double x = i + xdep[j];
                    out.at(i, j) = sample_q_line(psi, x, j, opt.bilinear);
                }
            }
        });
        return out;
    }

    parallel_for_rows(g.nq, [&](int ib, int ie) {
        for (int i = ib; i < ie; ++i) {
            double q = g.q(i);
            for (int j = 0; j < g.np; ++j) {
                auto zd = departure_point(h, q, g.p(j), dt);
                out.at(i, j) = sample_field(psi, zd[0], zd[1], opt.bilinear);
            }
        }
    });
    return out;
}

EvolutionRecord evolve(const PhaseWaveFunction& psi0, const HamiltonianModel& h,
                       double dt, int n_steps, const EvolveOptions& opt) {
    if (n_steps < 0) throw std::invalid_argument("evolve: n_steps must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    const PhaseGrid& g = psi0.grid;

    EvolutionRecord rec;
    rec.times.reserve(n_steps + 1);
    rec.norm2.reserve(n_steps + 1);

    // Soft step-size audit: how many cells does the fastest node cross per step.
    double rate = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double q = g.q(i);
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            rate = std::max(rate, std::abs(h.vq(q, p)) / g.dq);
            rate = std::max(rate, std::abs(h.vp(q, p)) / g.dp);
        }
    }
    rec.max_cells_per_step = rate * dt;
    rec.cfl_warning = rec.max_cells_per_step > opt.cfl_soft_limit;

    PhaseWaveFunction psi = psi0;
    rec.times.push_back(0.0);
    rec.norm2.push_back(norm_squared(psi));
    if (opt.snapshot_stride > 0) {
        rec.snapshot_times.push_back(0.0);
        rec.snapshots.push_back(psi);
    }
    for (int s = 1; s <= n_steps; ++s) {
        psi = advect_step(psi, h, dt, opt.advect);
        rec.times.push_back(s * dt);
        rec.norm2.push_back(norm_squared(psi));
        if (opt.snapshot_stride > 0 && s % opt.snapshot_stride == 0) {
            rec.snapshot_times.push_back(s * dt);
            rec.snapshots.push_back(psi);
        }
    }
    rec.final_state = std::move(psi);
    return rec;
}

}  // namespace qphase
