#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qphase {

/// How the grid treats the edges of the rectangular (q,p) window.
///
/// truncate    - the state is assumed to have decayed at the window edge;
///               reads outside the window return 0 and quadrature is trapezoid.
/// periodic_q  - the q axis wraps (period q_max - q_min, right endpoint not
///               stored); quadrature in q is the rectangle rule. p always
///               truncates: momentum is unbounded and must simply decay.
enum class BoundaryRule { truncate, periodic_q };

/// Uniform tensor grid over one (q,p) phase plane.
///
/// Node layout: q index i is the slow (outer) index, p index j the fast one,
/// matching the field CSV layout. For truncate axes both endpoints are nodes;
/// for periodic q the right endpoint is the wrap image of the left one.
struct PhaseGrid {
    int nq = 0;
    int np = 0;
    double q_min = 0.0, q_max = 0.0;
    double p_min = 0.0, p_max = 0.0;
    BoundaryRule boundary = BoundaryRule::truncate;

    double dq = 0.0;
    double dp = 0.0;

    double q(int i) const { return q_min + i * dq; }
    double p(int j) const { return p_min + j * dp; }

    std::size_t size() const { return static_cast<std::size_t>(nq) * np; }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * np + j;
    }

    bool periodic_q() const { return boundary == BoundaryRule::periodic_q; }
    double q_period() const { return q_max - q_min; }

    /// Quadrature weight of node (i,j): trapezoid halves the endpoint weight
    /// on truncating axes, the rectangle rule is uniform on the periodic one.
    double weight(int i, int j) const {
        double w = 1.0;
        if (!periodic_q() && (i == 0 || i == nq - 1)) w *= 0.5;
        if (j == 0 || j == np - 1) w *= 0.5;
        return w;
    }

    double cell_area() const { return dq * dp; }

    bool same_layout(const PhaseGrid& o) const {
        return nq == o.nq && np == o.np && q_min == o.q_min && q_max == o.q_max &&
               p_min == o.p_min && p_max == o.p_max && boundary == o.boundary;
    }
};

/// Validates bounds and sizes and fills in the spacings.
/// Requires nq, np >= 4 and strictly ordered bounds. (Derivative stencils
/// need 5 nodes per axis and enforce that themselves.)
PhaseGrid make_grid(int nq, int np, double q_min, double q_max, double p_min,
                    double p_max, BoundaryRule boundary = BoundaryRule::truncate);

}  // namespace qphase
