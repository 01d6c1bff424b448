#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "qphase/field.hpp"
#include "qphase/grid.hpp"
#include "qphase/hamiltonian.hpp"
#include "qphase/scenarios.hpp"

using namespace qphase;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("plane wave snaps its profile to the nearest momentum row") {
    PhaseGrid g = make_grid(256, 9, -2.0 * kPi, 2.0 * kPi, 0.0, 2.0,
                            BoundaryRule::periodic_q);
    PhaseWaveFunction psi = plane_wave(g, 1.07, 0.0);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < g.np; ++j) {
        double rowmax = 0.0;
        for (int i = 0; i < g.nq; ++i) rowmax = std::max(rowmax, std::abs(psi.at(i, j)));
        if (j == 4)
            CHECK(rowmax > 0.0);  // the row nearest p0 = 1.07 carries everything
        else
            CHECK(rowmax == 0.0);
    }
    // the carrier keeps the requested p0, not the snapped row value
    cplx ratio = psi.at(10, 4) / psi.at(9, 4);
    CHECK(std::arg(ratio) == doctest::Approx(1.07 * g.dq).epsilon(1e-10));
}

TEST_CASE("plane wave spreads over rows when given a momentum width") {
    PhaseGrid g = make_grid(128, 33, -2.0 * kPi, 2.0 * kPi, -2.0, 2.0,
                            BoundaryRule::periodic_q);
    PhaseWaveFunction psi = plane_wave(g, 0.5, 2.0);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-12));
    int jc = 20;  // p = 0.5
    CHECK(std::abs(psi.at(0, jc - 1)) > 0.0);
    CHECK(std::abs(psi.at(0, jc + 1)) > 0.0);
    CHECK(std::abs(psi.at(0, jc - 1)) < std::abs(psi.at(0, jc)));
}

TEST_CASE("plane wave rejects bad momenta") {
    PhaseGrid g = make_grid(64, 9, -2.0 * kPi, 2.0 * kPi, 0.0, 10.0,
                            BoundaryRule::periodic_q);
    CHECK_THROWS_AS(plane_wave(g, 11.0, 0.0), std::invalid_argument);  // off window
    // dq = 4 pi / 64: wavelength of p0 = 9 is 2 pi / 9 < 4 dq
    CHECK_THROWS_AS(plane_wave(g, 9.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(plane_wave(g, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("gaussian packet has the requested moments and shear-free action") {
    PhaseGrid g = make_grid(256, 256, -10.0, 10.0, -10.0, 10.0);
    PacketSpec spec{1.0, 0.5, 1.2, 0.6, 1.0};
    PhaseWaveFunction psi = gaussian_packet(g, spec);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-12));
    double mq = expectation_fn(psi, [](double q, double) { return q; });
    double mp = expectation_fn(psi, [](double, double p) { return p; });
    CHECK(mq == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(mp == doctest::Approx(0.5).epsilon(1e-8));
    double vq = expectation_fn(psi, [&](double q, double) { return (q - mq) * (q - mq); });
    CHECK(vq == doctest::Approx(1.2 * 1.2).epsilon(1e-8));
    double vp = expectation_fn(psi, [&](double, double p) { return (p - mp) * (p - mp); });
    CHECK(vp == doctest::Approx(0.6 * 0.6).epsilon(1e-8));

    // S = p (q - q0): check the phase at a node where it is far from a wrap
    int i = static_cast<int>(std::lround((1.5 - g.q(0)) / g.dq));
    int j = static_cast<int>(std::lround((0.5 - g.p(0)) / g.dp));
    double want = g.p(j) * (g.q(i) - spec.q0);
    CHECK(std::arg(psi.at(i, j)) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("gaussian packet rejects sub-heisenberg widths and clipped support") {
    PhaseGrid g = make_grid(128, 128, -10.0, 10.0, -10.0, 10.0);
    CHECK_THROWS_AS(gaussian_packet(g, {0, 0, 1.0, 0.4, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_packet(g, {9.0, 0, 1.0, 0.6, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_packet(g, {0, 8.5, 1.0, 0.6, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(gaussian_packet(g, {0, 0, 1.0, 0.5, 1.0}));  // exactly at the floor
}

TEST_CASE("two-slit superposition is consistently scaled and normalized") {
    PhaseGrid g = make_grid(512, 128, -16.0, 16.0, -4.0, 6.0);
    SlitSpec spec;
    spec.sigma_p = 1.0;
    TwoSlitState st = two_slit_superpose(g, spec);
    CHECK(norm_squared(st.psi1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm_squared(st.psi2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm_squared(st.psi_sup) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(st.overlap_warning);  // 1.5 >= 2 * 0.6

    double err = 0.0;
    for (std::size_t k = 0; k < st.psi_sup.data.size(); ++k)
        err = std::max(err, std::abs(st.psi_sup.data[k] -
                                     st.sup_scale * (st.psi1.data[k] + st.psi2.data[k])));
    CHECK(err <= 1e-12);

    SlitSpec tight = spec;
    tight.separation = 1.0;  // < 2 sigma_slit
    CHECK(two_slit_superpose(g, tight).overlap_warning);

    SlitSpec bad = spec;
    bad.p0 = 0.0;
    CHECK_THROWS_AS(two_slit_superpose(g, bad), std::invalid_argument);
    bad = spec;
    bad.separation = -1.0;
    CHECK_THROWS_AS(two_slit_superpose(g, bad), std::invalid_argument);
    bad = spec;
    bad.sigma_slit = 0.0;
    CHECK_THROWS_AS(two_slit_superpose(g, bad), std::invalid_argument);
}

TEST_CASE("fringe prediction and screen time follow the closed forms") {
    SlitSpec spec;
    spec.separation = 1.5;
    spec.p0 = 2.0;
    spec.screen_distance = 3.0;
    spec.hbar = 0.7;
    CHECK(predicted_fringe_spacing(spec) ==
          doctest::Approx(2.0 * kPi * 0.7 * 3.0 / (2.0 * 1.5)).epsilon(1e-12));
    CHECK(screen_time(spec, 1.3) == doctest::Approx(2.0 * 1.3 * 3.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("interference pattern keeps its mass and bounded coherence") {
    PhaseGrid g = make_grid(512, 128, -16.0, 16.0, -4.0, 6.0);
    SlitSpec spec;
    spec.sigma_p = 1.0;  // modest spread keeps the run small
    TwoSlitState st = two_slit_superpose(g, spec);
    HamiltonianModel h = free_hamiltonian(1.0);
    double t = screen_time(spec);
    InterferenceResult res = interference_pattern(st, h, t, 12);

    double mass = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double w = (i == 0 || i == g.nq - 1) ? 0.5 : 1.0;
        mass += w * res.intensity[i] * g.dq;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(2e-3));

    double gmax = 0.0, gmin = 0.0;
    for (double v : res.gamma) {
        gmax = std::max(gmax, v);
        gmin = std::min(gmin, v);
    }
    CHECK(gmax <= 1.0 + 1e-9);   // Cauchy-Schwarz bound on the coherence
    CHECK(gmin >= -1.0 - 1e-9);
    CHECK(gmax > 0.1);           // fringes present
    CHECK(gmin < -0.05);         // with genuine dark bands
    CHECK(res.edge_mass_fraction <= 1e-4);

    CHECK_THROWS_AS(interference_pattern(st, h, t, 0), std::invalid_argument);
    CHECK_THROWS_AS(interference_pattern(st, h, -1.0, 4), std::invalid_argument);
}

TEST_CASE("pattern mass reaching the window edge aborts the run") {
    PhaseGrid g = make_grid(256, 128, -4.0, 4.0, -6.0, 8.0);
    SlitSpec spec;
    spec.sigma_p = 1.0;
    TwoSlitState st = two_slit_superpose(g, spec);
    HamiltonianModel h = free_hamiltonian(1.0);
    CHECK_THROWS_AS(interference_pattern(st, h, 4.0, 8), std::runtime_error);
}

TEST_CASE("uncertainty corpus ships 21 named normalized states") {
    PhaseGrid g = make_grid(256, 256, -12.0, 12.0, -12.0, 12.0);
    auto corpus = uncertainty_corpus(g);
    CHECK(corpus.size() == 21);

    std::set<std::string> names;
    int saturating = 0;
    for (const auto& s : corpus) {
        names.insert(s.name);
        if (s.expect_saturating) ++saturating;
        CHECK(norm_squared(s.psi) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(names.size() == corpus.size());
    CHECK(saturating >= 10);
}
