#include "qphase/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace qphase {

namespace {

// 4th-order first-derivative stencils. Centered interior; the one-sided rows
// below keep full order at a truncating edge at the cost of a larger error
// constant, which is why boundary nodes are flagged rather than hidden.
template <class T>
inline T centered4(const T* f, std::ptrdiff_t s, double inv12h) {
    return (f[-2 * s] - 8.0 * f[-s] + 8.0 * f[s] - f[2 * s]) * inv12h;
}

template <class T>
inline T onesided4_edge(const T* f, std::ptrdiff_t s, double inv12h) {
    // derivative at the outermost node, stencil extends inward
    return (-25.0 * f[0] + 48.0 * f[s] - 36.0 * f[2 * s] + 16.0 * f[3 * s] -
            3.0 * f[4 * s]) *
           inv12h;
}

template <class T>
inline T onesided4_next(const T* f, std::ptrdiff_t s, double inv12h) {
    // derivative at the second node from the edge (f[0] is the edge)
    return (-3.0 * f[0] - 10.0 * f[s] + 18.0 * f[2 * s] - 6.0 * f[3 * s] + f[4 * s]) *
           inv12h;
}

// Derivative of one line of n values with stride s.
template <class T>
void diff_line(const T* f, T* out, int n, std::ptrdiff_t s, double h, bool periodic) {
    if (n < 5)
        throw std::invalid_argument(
            "derivative: axis needs at least 5 nodes for the 4th-order stencil");
    double inv12h = 1.0 / (12.0 * h);
    if (periodic) {
        for (int i = 0; i < n; ++i) {
            int im2 = (i - 2 + n) % n, im1 = (i - 1 + n) % n;
            int ip1 = (i + 1) % n, ip2 = (i + 2) % n;
            out[i * s] =
                (f[im2 * s] - 8.0 * f[im1 * s] + 8.0 * f[ip1 * s] - f[ip2 * s]) * inv12h;
        }
        return;
    }
    out[0] = onesided4_edge(f, s, inv12h);
    out[s] = onesided4_next(f, s, inv12h);
    for (int i = 2; i < n - 2; ++i) out[i * s] = centered4(f + i * s, s, inv12h);
    // mirrored one-sided stencils at the far edge (odd parity flips the sign)
    out[(n - 2) * s] = -onesided4_next(f + (n - 1) * s, -s, inv12h);
    out[(n - 1) * s] = -onesided4_edge(f + (n - 1) * s, -s, inv12h);
}

template <class Field>
Field diff_q_impl(const Field& in) {
    const PhaseGrid& g = in.grid;
    Field out(g);
    for (int j = 0; j < g.np; ++j)
        diff_line(in.data.data() + j, out.data.data() + j, g.nq, g.np, g.dq,
                  g.periodic_q());
    return out;
}

template <class Field>
Field diff_p_impl(const Field& in) {
    const PhaseGrid& g = in.grid;
    Field out(g);
    for (int i = 0; i < g.nq; ++i)
        diff_line(in.data.data() + g.idx(i, 0), out.data.data() + g.idx(i, 0), g.np, 1,
                  g.dp, false);
    return out;
}

}  // namespace

PhaseWaveFunction diff_q(const PhaseWaveFunction& psi) { return diff_q_impl(psi); }
RealField diff_q(const RealField& f) { return diff_q_impl(f); }

PhaseWaveFunction diff_p(const PhaseWaveFunction& psi) { return diff_p_impl(psi); }
RealField diff_p(const RealField& f) { return diff_p_impl(f); }

bool uses_one_sided_q(const PhaseGrid& g, int i) {
    return !g.periodic_q() && (i < 2 || i >= g.nq - 2);
}

bool uses_one_sided_p(const PhaseGrid& g, int j) { return j < 2 || j >= g.np - 2; }

PhaseWaveFunction apply_operator(PhaseOperator op, const PhaseWaveFunction& psi,
                                 const HamiltonianModel& h) {
    const PhaseGrid& g = psi.grid;
    const cplx mi_hbar{0.0, -h.hbar};  // -i hbar
    switch (op) {
        case PhaseOperator::momentum: {
            PhaseWaveFunction d = diff_q(psi);
            for (cplx& v : d.data) v *= mi_hbar;
            return d;
        }
        case PhaseOperator::position: {
            PhaseWaveFunction d = diff_p(psi);
            for (cplx& v : d.data) v *= mi_hbar;
            return d;
        }
        case PhaseOperator::kinetic: {
            PhaseWaveFunction d = diff_q(psi);
            for (int i = 0; i < g.nq; ++i)
                for (int j = 0; j < g.np; ++j)
                    d.at(i, j) *= 0.5 * mi_hbar * h.dHdp(g.q(i), g.p(j));
            return d;
        }
        case PhaseOperator::potential_virial: {
            PhaseWaveFunction d = diff_p(psi);
            for (int i = 0; i < g.nq; ++i)
                for (int j = 0; j < g.np; ++j)
                    d.at(i, j) *= -0.5 * mi_hbar * h.dHdq(g.q(i), g.p(j));
            return d;
        }
    }
    throw std::logic_error("apply_operator: unknown operator");
}

PhaseWaveFunction apply_energy(const PhaseWaveFunction& psi_prev,
                               const PhaseWaveFunction& psi_next, double dt,
                               double hbar) {
    if (!psi_prev.grid.same_layout(psi_next.grid))
        throw std::invalid_argument("apply_energy: snapshot grid mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("apply_energy: dt must be positive");
    PhaseWaveFunction out(psi_prev.grid);
    const cplx f{0.0, hbar / (2.0 * dt)};  // i hbar / (2 dt)
    for (std::size_t k = 0; k < out.data.size(); ++k)
        out.data[k] = f * (psi_next.data[k] - psi_prev.data[k]);
    return out;
}

MaskedField observable(const PhaseWaveFunction& Lpsi, const PhaseWaveFunction& psi) {
    if (!Lpsi.grid.same_layout(psi.grid))
        throw std::invalid_argument("observable: grid mismatch");
    MaskedField out;
    out.value = RealField(psi.grid);
    out.mask.assign(psi.grid.size(), 0);
    double amax = 0.0;
    for (const cplx& v : psi.data) amax = std::max(amax, std::abs(v));
    double floor = k_amplitude_floor_rel * amax;
    for (std::size_t k = 0; k < psi.data.size(); ++k) {
        if (std::abs(psi.data[k]) > floor) {
            out.mask[k] = 1;
            out.value.data[k] = (Lpsi.data[k] / psi.data[k]).real();
        }
    }
    return out;
}

double expectation_op(const PhaseWaveFunction& psi, const PhaseWaveFunction& Lpsi) {
    if (!psi.grid.same_layout(Lpsi.grid))
        throw std::invalid_argument("expectation_op: grid mismatch");
    const PhaseGrid& g = psi.grid;
    double acc = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.np; ++j) {
            std::size_t k = g.idx(i, j);
            row += g.weight(i, j) * (std::conj(psi.data[k]) * Lpsi.data[k]).real();
        }
        acc += row;
    }
    return acc * g.cell_area();
}

MaskedField quantum_potential(const PhaseWaveFunction& psi, const HamiltonianModel& h) {
    const PhaseGrid& g = psi.grid;
    MaskedField out;
    out.value = RealField(g);
    out.mask.assign(g.size(), 0);

    PhaseWaveFunction dp = diff_p(psi);
    double amax = 0.0;
    for (const cplx& v : psi.data) amax = std::max(amax, std::abs(v));
    double floor = k_amplitude_floor_rel * amax;

    const cplx ih2{0.0, 0.5 * h.hbar};  // i hbar / 2
    for (int i = 0; i < g.nq; ++i) {
        double q = g.q(i);
        double u = h.H(q, 0.0);  // configuration potential: H at p = 0
        for (int j = 0; j < g.np; ++j) {
            std::size_t k = g.idx(i, j);
            if (std::abs(psi.data[k]) <= floor) continue;
            out.mask[k] = 1;
            cplx dlog = dp.data[k] / psi.data[k];
            out.value.data[k] = (ih2 * h.dHdq(q, g.p(j)) * dlog).real() - u;
        }
    }
    return out;
}

MaskedField quantum_force(const MaskedField& uq) {
    const PhaseGrid& g = uq.value.grid;
    MaskedField out;
    out.value = diff_q(uq.value);
    for (double& v : out.value.data) v = -v;
    // A node's force is only as good as every U_q value its stencil read.
    out.mask.assign(g.size(), 0);
    for (int i = 0; i < g.nq; ++i) {
        // support of the derivative stencil at row i
        int lo = i - 2, hi = i + 2;
        if (!g.periodic_q()) {
            if (i < 2) {
                lo = 0;
                hi = 4;  // one-sided stencil reaches four rows inward
            } else if (i >= g.nq - 2) {
                lo = g.nq - 5;
                hi = g.nq - 1;
            }
        }
        for (int j = 0; j < g.np; ++j) {
            bool ok = true;
            for (int ii = lo; ii <= hi && ok; ++ii) {
                int iw = g.periodic_q() ? (ii % g.nq + g.nq) % g.nq : ii;
                ok = uq.mask[g.idx(iw, j)] != 0;
            }
            if (ok) out.mask[g.idx(i, j)] = 1;
        }
    }
    return out;
}

MaskedField quantum_force(const PhaseWaveFunction& psi, const HamiltonianModel& h) {
    return quantum_force(quantum_potential(psi, h));
}

MomentumConsistencyReport momentum_consistency_diagnostic(const PhaseWaveFunction& psi,
                                                          const HamiltonianModel& h) {
    const PhaseGrid& g = psi.grid;
    PhaseWaveFunction p1 = apply_operator(PhaseOperator::momentum, psi, h);
    PhaseWaveFunction p2 = apply_operator(PhaseOperator::momentum, p1, h);

    MomentumConsistencyReport rep;
    rep.re_ptilde.value = RealField(g);
    rep.im_ptilde.value = RealField(g);
    rep.deviation.value = RealField(g);
    rep.re_ptilde.mask.assign(g.size(), 0);

    double amax = 0.0;
    for (const cplx& v : psi.data) amax = std::max(amax, std::abs(v));
    double floor = k_amplitude_floor_rel * amax;

    for (std::size_t k = 0; k < psi.data.size(); ++k) {
        if (std::abs(psi.data[k]) <= floor) continue;
        rep.re_ptilde.mask[k] = 1;
        cplx pt = p1.data[k] / psi.data[k];
        double re = pt.real(), im = pt.imag();
        rep.re_ptilde.value.data[k] = re;
        rep.im_ptilde.value.data[k] = im;
        double dev = std::abs((p2.data[k] / psi.data[k]).real() - re * re);
        rep.deviation.value.data[k] = dev;
        rep.max_im_ptilde = std::max(rep.max_im_ptilde, std::abs(im));
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    rep.im_ptilde.mask = rep.re_ptilde.mask;
    rep.deviation.mask = rep.re_ptilde.mask;
    rep.mean_psq = expectation_op(psi, p2);
    return rep;
}

}  // namespace qphase
