#include <stdexcept>

#include "doctest.h"
#include "qphase/field.hpp"
#include "qphase/grid.hpp"

using namespace qphase;

TEST_CASE("truncating grid keeps both endpoints") {
    PhaseGrid g = make_grid(5, 9, -1.0, 1.0, -2.0, 2.0);
    CHECK(g.dq == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.dp == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.q(0) == -1.0);
    CHECK(g.q(4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.p(8) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_FALSE(g.periodic_q());
}

TEST_CASE("periodic q omits the aliased right endpoint") {
    PhaseGrid g = make_grid(8, 4, 0.0, 8.0, -1.0, 1.0, BoundaryRule::periodic_q);
    CHECK(g.dq == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.q(7) == doctest::Approx(7.0).epsilon(1e-15));  // not 8: that wraps to 0
    CHECK(g.periodic_q());
}

TEST_CASE("storage is q-outer row-major") {
    PhaseGrid g = make_grid(6, 5, 0.0, 1.0, 0.0, 1.0);
    CHECK(g.idx(0, 0) == 0);
    CHECK(g.idx(0, 4) == 4);
    CHECK(g.idx(1, 0) == 5);
    CHECK(g.idx(3, 2) == 3 * 5 + 2);
    CHECK(g.size() == 30);
}

TEST_CASE("quadrature weights integrate a constant exactly") {
    // Trapezoid (truncate) and rectangle (periodic q) rules are both exact on
    // constants, so the weighted sum must give the window area to rounding.
    for (BoundaryRule b : {BoundaryRule::truncate, BoundaryRule::periodic_q}) {
        PhaseGrid g = make_grid(17, 13, -3.0, 5.0, -2.0, 2.0, b);
        RealField one(g);
        for (double& v : one.data) v = 1.0;
        CHECK(integrate(one) == doctest::Approx(8.0 * 4.0).epsilon(1e-14));
    }
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_grid(3, 8, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 3, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, 1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, 0.0, 1.0, 2.0, -2.0), std::invalid_argument);
}

TEST_CASE("same_layout distinguishes geometry") {
    PhaseGrid a = make_grid(8, 8, 0.0, 1.0, 0.0, 1.0);
    PhaseGrid b = make_grid(8, 8, 0.0, 1.0, 0.0, 1.0);
    PhaseGrid c = make_grid(8, 8, 0.0, 2.0, 0.0, 1.0);
    CHECK(a.same_layout(b));
    CHECK_FALSE(a.same_layout(c));
}
