#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "qphase/field.hpp"
#include "qphase/grid.hpp"

using namespace qphase;

namespace {

PhaseWaveFunction gaussian(const PhaseGrid& g) {
    PhaseWaveFunction psi(g);
    for (int i = 0; i < g.nq; ++i)
        for (int j = 0; j < g.np; ++j) {
            double q = g.q(i), p = g.p(j);
            psi.at(i, j) = std::exp(-(q * q + p * p));
        }
    return psi;
}

}  // namespace

TEST_CASE("norm of a unit Gaussian against the closed form") {
    // integral of exp(-2 q^2 - 2 p^2) over the plane is pi / 2; the window
    // [-8, 8]^2 leaves a tail below 1e-55 and the trapezoid rule converges
    // superalgebraically on smooth decaying integrands.
    PhaseGrid g = make_grid(256, 256, -8.0, 8.0, -8.0, 8.0);
    PhaseWaveFunction psi(g);
    for (int i = 0; i < g.nq; ++i)
        for (int j = 0; j < g.np; ++j) {
            double q = g.q(i), p = g.p(j);
            psi.at(i, j) = std::exp(-(q * q + p * p));
        }
    double expected = 3.14159265358979323846 / 2.0;
    CHECK(norm_squared(psi) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("normalize produces unit norm and rejects the zero field") {
    PhaseGrid g = make_grid(64, 64, -6.0, 6.0, -6.0, 6.0);
    PhaseWaveFunction psi = gaussian(g);
    normalize(psi);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-14));

    PhaseWaveFunction zero(g);
    CHECK_THROWS_AS(normalize(zero), std::runtime_error);
}

TEST_CASE("second moment of the normalized Gaussian") {
    // |psi|^2 ~ exp(-2 q^2): <q^2> = 1/4.
    PhaseGrid g = make_grid(192, 192, -8.0, 8.0, -8.0, 8.0);
    PhaseWaveFunction psi = gaussian(g);
    normalize(psi);
    double q2 = expectation_fn(psi, [](double q, double) { return q * q; });
    CHECK(q2 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("marginals integrate to the norm") {
    PhaseGrid g = make_grid(128, 96, -7.0, 7.0, -6.0, 6.0);
    PhaseWaveFunction psi = gaussian(g);
    normalize(psi);

    std::vector<double> rq = marginal_q(psi);
    double total = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double w = (i == 0 || i == g.nq - 1) ? 0.5 : 1.0;
        total += w * rq[i];
    }
    total *= g.dq;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> rp = marginal_p(psi);
    double totp = 0.0;
    for (int j = 0; j < g.np; ++j) {
        double w = (j == 0 || j == g.np - 1) ? 0.5 : 1.0;
        totp += w * rp[j];
    }
    totp *= g.dp;
    CHECK(totp == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polar decomposition round-trips away from nodes") {
    PhaseGrid g = make_grid(96, 96, -5.0, 5.0, -5.0, 5.0);
    double hbar = 0.7;
    PhaseWaveFunction psi(g);
    for (int i = 0; i < g.nq; ++i)
        for (int j = 0; j < g.np; ++j) {
            double q = g.q(i), p = g.p(j);
            double amp = std::exp(-0.5 * (q * q + p * p));
            double s = 0.3 * q - 0.2 * p * q;
            psi.at(i, j) = std::polar(amp, s / hbar);
        }

    PolarDecomposition pol = decompose_polar(psi, hbar);
    PhaseWaveFunction back = assemble_polar(pol.amplitude, pol.action, hbar);
    double err = 0.0;
    for (int i = 0; i < g.nq; ++i)
        for (int j = 0; j < g.np; ++j) {
            if (!pol.mask[g.idx(i, j)]) continue;
            err = std::max(err, std::abs(back.at(i, j) - psi.at(i, j)));
        }
    CHECK(err <= 1e-12);
}

TEST_CASE("polar mask flags nodes below the amplitude floor") {
    PhaseGrid g = make_grid(16, 16, -1.0, 1.0, -1.0, 1.0);
    PhaseWaveFunction psi(g);
    psi.at(8, 8) = 1.0;  // everything else is exactly zero
    PolarDecomposition pol = decompose_polar(psi, 1.0);
    CHECK(pol.mask[g.idx(8, 8)] == 1);
    CHECK(pol.mask[g.idx(0, 0)] == 0);
    CHECK(pol.action.at(0, 0) == 0.0);
}

TEST_CASE("expectation rejects mismatched grids") {
    PhaseGrid a = make_grid(32, 32, -4.0, 4.0, -4.0, 4.0);
    PhaseGrid b = make_grid(32, 32, -5.0, 4.0, -4.0, 4.0);
    PhaseWaveFunction psi = gaussian(a);
    RealField f(b);
    CHECK_THROWS_AS(expectation(psi, f), std::invalid_argument);
}
