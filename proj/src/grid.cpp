#include "qphase/grid.hpp"

namespace qphase {

PhaseGrid make_grid(int nq, int np, double q_min, double q_max, double p_min,
                    double p_max, BoundaryRule boundary) {
    if (nq < 4 || np < 4)
        throw std::invalid_argument("make_grid: need at least 4 nodes per axis, got " +
                                    std::to_string(nq) + "x" + std::to_string(np));
    if (!(q_min < q_max) || !(p_min < p_max))
        throw std::invalid_argument("make_grid: bounds must be strictly ordered");

    PhaseGrid g;
    g.nq = nq;
    g.np = np;
    g.q_min = q_min;
    g.q_max = q_max;
    g.p_min = p_min;
    g.p_max = p_max;
    g.boundary = boundary;
    // Periodic q omits the right endpoint (it aliases the left one); truncate
    // keeps both so the trapezoid rule sees the full window.
    g.dq = (boundary == BoundaryRule::periodic_q) ? (q_max - q_min) / nq
                                                  : (q_max - q_min) / (nq - 1);
    g.dp = (p_max - p_min) / (np - 1);
    return g;
}

}  // namespace qphase
