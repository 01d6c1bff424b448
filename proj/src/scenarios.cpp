#include "qphase/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "qphase/stationary.hpp"

namespace qphase {

namespace {

constexpr double k_pi = 3.14159265358979323846;

PhaseWaveFunction add_scaled(const PhaseWaveFunction& a, const PhaseWaveFunction& b,
                             double s) {
    PhaseWaveFunction out(a.grid);
    for (std::size_t k = 0; k < out.data.size(); ++k)
        out.data[k] = s * (a.data[k] + b.data[k]);
    return out;
}

}  // namespace

PhaseWaveFunction plane_wave(const PhaseGrid& g, double p0, double sigma_p_cells,
                             double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("plane_wave: hbar must be positive");
    if (sigma_p_cells < 0.0)
        throw std::invalid_argument("plane_wave: sigma_p_cells must be >= 0");
    if (p0 < g.p_min || p0 > g.p_max)
        throw std::invalid_argument("plane_wave: p0 outside the momentum window");
    if (p0 != 0.0 && 2.0 * k_pi * hbar / std::abs(p0) < 4.0 * g.dq)
        throw std::invalid_argument("plane_wave: wavelength under 4 grid cells");

    int jc = static_cast<int>(std::lround((p0 - g.p_min) / g.dp));
    if (jc < 0) jc = 0;
    if (jc >= g.np) jc = g.np - 1;
    double pc = g.p(jc);
    double sp = sigma_p_cells * g.dp;

    PhaseWaveFunction psi(g);
    for (int j = 0; j < g.np; ++j) {
        double prof;
        if (sp > 0.0) {
            double d = (g.p(j) - pc) / sp;
            prof = std::exp(-0.25 * d * d);
        } else {
            prof = (j == jc) ? 1.0 : 0.0;
        }
        if (prof == 0.0) continue;
        for (int i = 0; i < g.nq; ++i) {
            double phase = p0 * g.q(i) / hbar;
            psi.at(i, j) = prof * cplx{std::cos(phase), std::sin(phase)};
        }
    }
    normalize(psi);
    return psi;
}

PhaseWaveFunction gaussian_packet(const PhaseGrid& g, const PacketSpec& s) {
    if (!(s.sigma_q > 0.0) || !(s.sigma_p > 0.0))
        throw std::invalid_argument("gaussian_packet: widths must be positive");
    if (!(s.hbar > 0.0)) throw std::invalid_argument("gaussian_packet: hbar must be positive");
    if (s.sigma_q * s.sigma_p < 0.5 * s.hbar * (1.0 - 1e-12))
        throw std::invalid_argument(
            "gaussian_packet: sigma_q * sigma_p below the Heisenberg floor hbar/2");
    if (s.q0 - 4.0 * s.sigma_q < g.q_min || s.q0 + 4.0 * s.sigma_q > g.q_max ||
        s.p0 - 4.0 * s.sigma_p < g.p_min || s.p0 + 4.0 * s.sigma_p > g.p_max)
        throw std::invalid_argument("gaussian_packet: 4-sigma support leaves the grid");

    PhaseWaveFunction psi(g);
    double aq = 1.0 / (4.0 * s.sigma_q * s.sigma_q);
    double ap = 1.0 / (4.0 * s.sigma_p * s.sigma_p);
    for (int i = 0; i < g.nq; ++i) {
        double dq0 = g.q(i) - s.q0;
        double eq = -aq * dq0 * dq0;
        for (int j = 0; j < g.np; ++j) {
            double p = g.p(j);
            double dp0 = p - s.p0;
            double amp = std::exp(eq - ap * dp0 * dp0);
            double phase = p * dq0 / s.hbar;  // S = p (q - q0)
            psi.at(i, j) = amp * cplx{std::cos(phase), std::sin(phase)};
        }
    }
    normalize(psi);
    return psi;
}

TwoSlitState two_slit_superpose(const PhaseGrid& g, const SlitSpec& spec) {
    if (!(spec.sigma_slit > 0.0))
        throw std::invalid_argument("two_slit_superpose: sigma_slit must be positive");
    if (spec.p0 == 0.0)
        throw std::invalid_argument("two_slit_superpose: p0 must be nonzero");
    if (!(spec.separation > 0.0))
        throw std::invalid_argument("two_slit_superpose: separation must be positive");

    double sp = spec.sigma_p > 0.0 ? spec.sigma_p : 2.0 * spec.hbar / spec.sigma_slit;

    PacketSpec ps;
    ps.p0 = spec.p0;
    ps.sigma_q = spec.sigma_slit;
    ps.sigma_p = sp;
    ps.hbar = spec.hbar;

    TwoSlitState st;
    ps.q0 = -0.5 * spec.separation;
    st.psi1 = gaussian_packet(g, ps);
    ps.q0 = +0.5 * spec.separation;
    st.psi2 = gaussian_packet(g, ps);
    st.overlap_warning = spec.separation < 2.0 * spec.sigma_slit;

    PhaseWaveFunction sum = add_scaled(st.psi1, st.psi2, 1.0);
    double n2 = norm_squared(sum);
    st.sup_scale = 1.0 / std::sqrt(n2);
    st.psi_sup = add_scaled(st.psi1, st.psi2, st.sup_scale);
    return st;
}

double predicted_fringe_spacing(const SlitSpec& spec) {
    return 2.0 * k_pi * spec.hbar * spec.screen_distance /
           (std::abs(spec.p0) * spec.separation);
}

double screen_time(const SlitSpec& spec, double m) {
    return 2.0 * m * spec.screen_distance / std::abs(spec.p0);
}

InterferenceResult interference_pattern(const TwoSlitState& state,
                                        const HamiltonianModel& h, double t_screen,
                                        int n_steps, const EvolveOptions& opt) {
    if (n_steps < 1)
        throw std::invalid_argument("interference_pattern: n_steps >= 1");
    if (!(t_screen > 0.0))
        throw std::invalid_argument("interference_pattern: t_screen must be positive");
    const PhaseGrid& g = state.psi1.grid;
    if (!g.same_layout(state.psi2.grid))
        throw std::invalid_argument("interference_pattern: slit grids differ");

    double dt = t_screen / n_steps;
    EvolveOptions eo = opt;
    eo.snapshot_stride = 0;

    PhaseWaveFunction f1 = state.psi1;
    PhaseWaveFunction f2 = state.psi2;
    for (cplx& v : f1.data) v *= state.sup_scale;
    for (cplx& v : f2.data) v *= state.sup_scale;

    EvolutionRecord r1 = evolve(f1, h, dt, n_steps, eo);
    EvolutionRecord r2 = evolve(f2, h, dt, n_steps, eo);
    PhaseWaveFunction both = add_scaled(r1.final_state, r2.final_state, 1.0);

    InterferenceResult res;
    res.q.resize(g.nq);
    for (int i = 0; i < g.nq; ++i) res.q[i] = g.q(i);
    res.single1 = marginal_q(r1.final_state);
    res.single2 = marginal_q(r2.final_state);
    res.intensity = marginal_q(both);

    res.cross.resize(g.nq);
    res.gamma.assign(g.nq, 0.0);
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        m1 = std::max(m1, res.single1[i]);
        m2 = std::max(m2, res.single2[i]);
    }
    for (int i = 0; i < g.nq; ++i) {
        res.cross[i] = res.intensity[i] - res.single1[i] - res.single2[i];
        if (res.single1[i] > 1e-6 * m1 && res.single2[i] > 1e-6 * m2)
            res.gamma[i] = res.cross[i] / (2.0 * std::sqrt(res.single1[i] * res.single2[i]));
    }

    // Mass in the outer 4 columns flags a pattern that reached the q edge.
    double total = 0.0, edge = 0.0;
    for (int i = 0; i < g.nq; ++i) {
        double w = (!g.periodic_q() && (i == 0 || i == g.nq - 1)) ? 0.5 : 1.0;
        double cell = w * res.intensity[i];
        total += cell;
        if (i < 4 || i >= g.nq - 4) edge += cell;
    }
    res.edge_mass_fraction = total > 0.0 ? edge / total : 0.0;
    if (res.edge_mass_fraction > 1e-4)
        throw std::runtime_error(
            "interference_pattern: pattern mass reached the grid edge");
    return res;
}

std::vector<NamedState> uncertainty_corpus(const PhaseGrid& g, double hbar) {
    std::vector<NamedState> out;

    auto add_ho = [&](const char* name, StandingBranch br, int n, double beta,
                      bool sat) {
        HOStationaryState st = make_ho_state(br, n, 1.0, 1.0, hbar, beta);
        out.push_back({name, ho_wavefunction(st, g), sat});
    };
    auto add_packet = [&](const char* name, double q0, double p0, double sq,
                          double sp, bool sat) {
        PacketSpec ps{q0, p0, sq, sp, hbar};
        out.push_back({name, gaussian_packet(g, ps), sat});
    };
    auto add_cat = [&](const char* name, double sep, double p0, double sq, double sp) {
        PacketSpec ps{-0.5 * sep, p0, sq, sp, hbar};
        PhaseWaveFunction a = gaussian_packet(g, ps);
        ps.q0 = +0.5 * sep;
        PhaseWaveFunction b = gaussian_packet(g, ps);
        PhaseWaveFunction sum(g);
        for (std::size_t k = 0; k < sum.data.size(); ++k)
            sum.data[k] = a.data[k] + b.data[k];
        normalize(sum);
        out.push_back({name, std::move(sum), false});
    };

    double hw = hbar;  // beta = hbar * omega with omega = 1
    add_ho("ho_cos_n0", StandingBranch::cosine, 0, hw, true);
    add_ho("ho_sin_n1", StandingBranch::sine, 1, hw, true);
    add_ho("ho_cos_n1", StandingBranch::cosine, 1, hw, true);
    add_ho("ho_cos_n2", StandingBranch::cosine, 2, hw, true);
    add_ho("ho_sin_n3", StandingBranch::sine, 3, hw, true);
    add_ho("ho_cos_n0_b1.5", StandingBranch::cosine, 0, 1.5 * hw, false);
    add_ho("ho_sin_n1_b1.5", StandingBranch::sine, 1, 1.5 * hw, false);
    add_ho("ho_cos_n0_b2", StandingBranch::cosine, 0, 2.0 * hw, false);
    add_ho("ho_sin_n1_b2", StandingBranch::sine, 1, 2.0 * hw, false);
    add_ho("ho_cos_n0_b3", StandingBranch::cosine, 0, 3.0 * hw, false);

    double min_w = 0.5 * hbar;  // sigma_q * sigma_p at the floor
    add_packet("packet_min_w0.5", 0, 0, 0.5, min_w / 0.5, true);
    add_packet("packet_min_w0.71", 0, 0, std::sqrt(0.5), min_w / std::sqrt(0.5), true);
    add_packet("packet_min_w1", 0, 0, 1.0, min_w / 1.0, true);
    add_packet("packet_min_w1.25", 0, 0, 1.25, min_w / 1.25, true);
    add_packet("packet_min_boosted", 1.5, 2.0, 0.8, min_w / 0.8, true);
    add_packet("packet_wide", 0, 0, 2.0, 0.35, false);
    add_packet("packet_tall", 0, 0, 0.5, 1.3, false);
    add_packet("packet_loose", 0, 0, 1.0, 0.75, false);

    add_cat("cat_sep4", 4.0, 0.0, std::sqrt(0.5), min_w / std::sqrt(0.5));
    add_cat("cat_sep6", 6.0, 0.0, 0.5, min_w / 0.5);
    add_cat("cat_boosted", 4.0, 1.0, std::sqrt(0.5), min_w / std::sqrt(0.5));
    return out;
}

}  // namespace qphase
