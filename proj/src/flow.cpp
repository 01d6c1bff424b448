#include "qphase/flow.hpp"

#include <cmath>

namespace qphase {

PhaseFlowField build_flow(const HamiltonianModel& h, const PhaseGrid& grid) {
    PhaseFlowField f(grid);
    for (int i = 0; i < grid.nq; ++i) {
        double q = grid.q(i);
        for (int j = 0; j < grid.np; ++j) {
            double p = grid.p(j);
            std::size_t k = grid.idx(i, j);
            f.vq[k] = h.vq(q, p);
            f.vp[k] = h.vp(q, p);
        }
    }
    return f;
}

double divergence_max(const PhaseFlowField& flow) {
    const PhaseGrid& g = flow.grid;
    double worst = 0.0;
    for (int i = 1; i < g.nq - 1; ++i) {
        for (int j = 1; j < g.np - 1; ++j) {
            double dvq = (flow.vq[g.idx(i + 1, j)] - flow.vq[g.idx(i - 1, j)]) / (2.0 * g.dq);
            double dvp = (flow.vp[g.idx(i, j + 1)] - flow.vp[g.idx(i, j - 1)]) / (2.0 * g.dp);
            worst = std::max(worst, std::abs(dvq + dvp));
        }
    }
    return worst;
}

double max_cell_rate(const PhaseFlowField& flow) {
    const PhaseGrid& g = flow.grid;
    double worst = 0.0;
    for (std::size_t k = 0; k < flow.vq.size(); ++k) {
        worst = std::max(worst, std::abs(flow.vq[k]) / g.dq);
        worst = std::max(worst, std::abs(flow.vp[k]) / g.dp);
    }
    return worst;
}

}  // namespace qphase
