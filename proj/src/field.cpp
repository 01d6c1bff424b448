#include "qphase/field.hpp"

#include <cmath>
#include <stdexcept>

namespace qphase {

double integrate(const RealField& f) {
    const PhaseGrid& g = f.grid;
    double acc = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.np; ++j) row += g.weight(i, j) * f.at(i, j);
        acc += row;
    }
    return acc * g.cell_area();
}

double norm_squared(const PhaseWaveFunction& psi) {
    const PhaseGrid& g = psi.grid;
    double acc = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.np; ++j) row += g.weight(i, j) * std::norm(psi.at(i, j));
        acc += row;
    }
    return acc * g.cell_area();
}

void normalize(PhaseWaveFunction& psi) {
    double n2 = norm_squared(psi);
    if (!(n2 > 1e-300))
        throw std::runtime_error("normalize: state has (near-)zero norm");
    double s = 1.0 / std::sqrt(n2);
    for (cplx& v : psi.data) v *= s;
}

RealField density(const PhaseWaveFunction& psi) {
    RealField rho(psi.grid);
    for (std::size_t k = 0; k < psi.data.size(); ++k) rho.data[k] = std::norm(psi.data[k]);
    return rho;
}

double expectation(const PhaseWaveFunction& psi, const RealField& F) {
    if (!psi.grid.same_layout(F.grid))
        throw std::invalid_argument("expectation: observable sampled on a different grid");
    const PhaseGrid& g = psi.grid;
    double acc = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.np; ++j)
            row += g.weight(i, j) * F.at(i, j) * std::norm(psi.at(i, j));
        acc += row;
    }
    return acc * g.cell_area();
}

std::vector<double> marginal_q(const PhaseWaveFunction& psi) {
    const PhaseGrid& g = psi.grid;
    std::vector<double> out(g.nq, 0.0);
    for (int i = 0; i < g.nq; ++i) {
        double acc = 0.0;
        for (int j = 0; j < g.np; ++j) {
            double w = (j == 0 || j == g.np - 1) ? 0.5 : 1.0;  // trapezoid in p
            acc += w * std::norm(psi.at(i, j));
        }
        out[i] = acc * g.dp;
    }
    return out;
}

std::vector<double> marginal_p(const PhaseWaveFunction& psi) {
    const PhaseGrid& g = psi.grid;
    std::vector<double> out(g.np, 0.0);
    for (int j = 0; j < g.np; ++j) {
        double acc = 0.0;
        for (int i = 0; i < g.nq; ++i) {
            double w = (!g.periodic_q() && (i == 0 || i == g.nq - 1)) ? 0.5 : 1.0;
            acc += w * std::norm(psi.at(i, j));
        }
        out[j] = acc * g.dq;
    }
    return out;
}

PhaseWaveFunction assemble_polar(const RealField& amplitude, const RealField& action,
                                 double hbar) {
    if (!amplitude.grid.same_layout(action.grid))
        throw std::invalid_argument("assemble_polar: amplitude/action grid mismatch");
    if (!(hbar > 0.0)) throw std::invalid_argument("assemble_polar: hbar must be positive");
    PhaseWaveFunction psi(amplitude.grid);
    for (std::size_t k = 0; k < psi.data.size(); ++k) {
        double a = amplitude.data[k];
        if (a < 0.0)
            throw std::invalid_argument("assemble_polar: amplitude must be non-negative");
        psi.data[k] = std::polar(a, action.data[k] / hbar);
    }
    return psi;
}

PolarDecomposition decompose_polar(const PhaseWaveFunction& psi, double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("decompose_polar: hbar must be positive");
    PolarDecomposition out;
    out.amplitude = RealField(psi.grid);
    out.action = RealField(psi.grid);
    out.mask.assign(psi.grid.size(), 0);

    double amax = 0.0;
    for (const cplx& v : psi.data) amax = std::max(amax, std::abs(v));
    out.amplitude_floor = k_amplitude_floor_rel * amax;

    for (std::size_t k = 0; k < psi.data.size(); ++k) {
        double a = std::abs(psi.data[k]);
        out.amplitude.data[k] = a;
        if (a > out.amplitude_floor) {
            out.mask[k] = 1;
            out.action.data[k] = hbar * std::atan2(psi.data[k].imag(), psi.data[k].real());
        }
    }
    return out;
}

}  // namespace qphase
