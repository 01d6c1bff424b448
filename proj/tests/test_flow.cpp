#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qphase/flow.hpp"
#include "qphase/grid.hpp"
#include "qphase/hamiltonian.hpp"

using namespace qphase;

TEST_CASE("free flow moves at half the particle velocity") {
    HamiltonianModel h = free_hamiltonian(2.0);
    CHECK(h.vq(0.3, 1.2) == doctest::Approx(1.2 / 4.0).epsilon(1e-15));
    CHECK(h.vp(0.3, 1.2) == 0.0);
    CHECK(h.H(0.3, 1.2) == doctest::Approx(1.2 * 1.2 / 4.0).epsilon(1e-15));
}

TEST_CASE("harmonic flow is the half-rate rotation field") {
    HamiltonianModel h = harmonic_hamiltonian(1.0, 2.0);
    // H = q^2 * omega^2 / 2 + p^2 / 2; V = (p/2, -omega^2 q / 2)
    CHECK(h.vq(1.0, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(h.vp(1.0, 3.0) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("synthetic shear flow has unit divergence") {
    // V = (q, 0): dVq/dq = 1 everywhere; centered differences are exact on
    // linear fields, so divergence_max is exactly 1 up to rounding.
    PhaseGrid g = make_grid(32, 32, -2.0, 2.0, -2.0, 2.0);
    PhaseFlowField f(g);
    for (int i = 0; i < g.nq; ++i)
        for (int j = 0; j < g.np; ++j) f.vq[g.idx(i, j)] = g.q(i);
    CHECK(divergence_max(f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hamiltonian flows are incompressible on the grid") {
    PhaseGrid g = make_grid(64, 64, -6.0, 6.0, -6.0, 6.0);
    CHECK(divergence_max(build_flow(free_hamiltonian(1.0), g)) <= 1e-10);
    CHECK(divergence_max(build_flow(harmonic_hamiltonian(1.0, 1.0), g)) <= 1e-10);
    CHECK(divergence_max(build_flow(relativistic_hamiltonian(1.0, 10.0), g)) <= 1e-10);
}

TEST_CASE("max cell rate matches the fastest node") {
    PhaseGrid g = make_grid(101, 101, -10.0, 10.0, -5.0, 5.0);
    PhaseFlowField f = build_flow(harmonic_hamiltonian(1.0, 1.0), g);
    // |vq| peaks at |p| = 5 -> 2.5; |vp| peaks at |q| = 10 -> 5.
    double expected = std::max(2.5 / g.dq, 5.0 / g.dp);
    CHECK(max_cell_rate(f) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("relativistic energy and flow reduce to Newtonian far below c") {
    double c = 1000.0;
    HamiltonianModel rel = relativistic_hamiltonian(1.0, c);
    HamiltonianModel nr = free_hamiltonian(1.0);
    for (double p : {0.1, 1.0, 3.0}) {
        // Leading corrections are relative p^2/4c^2 for H and p^2/2c^2 for vq,
        // so allow twice that and no more.
        CHECK(rel.H(0.0, p) ==
              doctest::Approx(nr.H(0.0, p)).epsilon(p * p / (2.0 * c * c)));
        CHECK(rel.vq(0.0, p) ==
              doctest::Approx(nr.vq(0.0, p)).epsilon(p * p / (c * c)));
    }
}

TEST_CASE("relativistic phase velocity: exact values and branch symmetry") {
    double c = 7.0, m = 2.0;
    // v/c = 0.6: gamma = 1.25, p = gamma m v, and v_phase = c/3 exactly.
    double v = 0.6 * c;
    double p = 1.25 * m * v;
    CHECK(relativistic_phase_velocity(p, m, c) ==
          doctest::Approx(c / 3.0).epsilon(1e-15));
    // The negative branch negates the phase velocity exactly, bit for bit.
    CHECK(relativistic_phase_velocity(p, m, c, -1) ==
          -relativistic_phase_velocity(p, m, c, +1));
    // Small p: v_phase ~ p / (2m), no cancellation catastrophe.
    double tiny = 1e-8;
    CHECK(relativistic_phase_velocity(tiny, m, c) ==
          doctest::Approx(tiny / (2.0 * m)).epsilon(1e-9));
    CHECK(relativistic_phase_velocity(0.0, m, c) == 0.0);
}

TEST_CASE("tabulated Hamiltonian interpolates the potential and its slope") {
    // U(q) = q^2 sampled on [-2, 2]; the 4th-order slope reconstruction is
    // exact on polynomials up to degree 4.
    int n = 21;
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) {
        double q = -2.0 + 4.0 * i / (n - 1);
        u[i] = q * q;
    }
    HamiltonianModel h = tabulated_hamiltonian(u, -2.0, 2.0, 1.0, 1.0);
    CHECK(h.H(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // node value is exact; between nodes the table is linear in q
    CHECK(h.vp(1.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-10));  // -dU/dq / 2
    CHECK(h.vq(0.0, 1.5) == doctest::Approx(0.75).epsilon(1e-15));
    // outside the table the potential clamps: flat, so no force
    CHECK(h.H(5.0, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(tabulated_hamiltonian({1.0, 2.0}, 0.0, 1.0, 1.0, 1.0),
                    std::invalid_argument);
}
