#include "qphase/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qphase/csv.hpp"

namespace qphase {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::free_wave: return "free_wave";
        case Scenario::free_packet: return "free_packet";
        case Scenario::harmonic_evolve: return "harmonic_evolve";
        case Scenario::harmonic_stationary: return "harmonic_stationary";
        case Scenario::quantize: return "quantize";
        case Scenario::two_slit: return "two_slit";
        case Scenario::uncertainty_suite: return "uncertainty_suite";
        case Scenario::relativistic_table: return "relativistic_table";
        case Scenario::oracle_compare: return "oracle_compare";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

bool parse_int(const std::string& s, int& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

struct Parser {
    RunConfig cfg;
    std::vector<ConfigError> errors;
    std::map<std::string, int> seen;  // key -> line first set
    bool scenario_set = false;

    void fail(int line, std::string msg) { errors.push_back({line, std::move(msg)}); }

    // Each setter returns false if the value is bad (message already logged).
    using Setter = std::function<bool(const std::string&, int)>;
    std::map<std::string, Setter> keys;

    void number(const char* key, double* dst,
                const std::function<bool(double)>& ok, const char* range_msg) {
        keys[key] = [this, key, dst, ok, range_msg](const std::string& v, int line) {
            double x;
            if (!parse_double(v, x)) {
                fail(line, std::string(key) + ": not a number: '" + v + "'");
                return false;
            }
            if (!ok(x)) {
                fail(line, std::string(key) + ": " + range_msg + " (got " + v + ")");
                return false;
            }
            *dst = x;
            return true;
        };
    }

    void integer(const char* key, int* dst, const std::function<bool(int)>& ok,
                 const char* range_msg) {
        keys[key] = [this, key, dst, ok, range_msg](const std::string& v, int line) {
            int x;
            if (!parse_int(v, x)) {
                fail(line, std::string(key) + ": not an integer: '" + v + "'");
                return false;
            }
            if (!ok(x)) {
                fail(line, std::string(key) + ": " + range_msg + " (got " + v + ")");
                return false;
            }
            *dst = x;
            return true;
        };
    }

    Parser() {
        auto any = [](double) { return true; };
        auto pos = [](double x) { return x > 0.0; };
        auto nonneg = [](double x) { return x >= 0.0; };

        keys["run.scenario"] = [this](const std::string& v, int line) {
            static const std::map<std::string, Scenario> names = {
                {"free_wave", Scenario::free_wave},
                {"free_packet", Scenario::free_packet},
                {"harmonic_evolve", Scenario::harmonic_evolve},
                {"harmonic_stationary", Scenario::harmonic_stationary},
                {"quantize", Scenario::quantize},
                {"two_slit", Scenario::two_slit},
                {"uncertainty_suite", Scenario::uncertainty_suite},
                {"relativistic_table", Scenario::relativistic_table},
                {"oracle_compare", Scenario::oracle_compare},
            };
            auto it = names.find(v);
            if (it == names.end()) {
                fail(line, "run.scenario: unknown scenario '" + v + "'");
                return false;
            }
            cfg.scenario = it->second;
            scenario_set = true;
            return true;
        };

        number("grid.q_min", &cfg.q_min, any, "");
        number("grid.q_max", &cfg.q_max, any, "");
        number("grid.p_min", &cfg.p_min, any, "");
        number("grid.p_max", &cfg.p_max, any, "");
        integer("grid.nq", &cfg.nq, [](int n) { return n >= 4; }, "need at least 4 nodes");
        integer("grid.np", &cfg.np, [](int n) { return n >= 4; }, "need at least 4 nodes");
        keys["grid.boundary"] = [this](const std::string& v, int line) {
            if (v == "truncate") {
                cfg.boundary = BoundaryRule::truncate;
            } else if (v == "periodic" || v == "periodic_q") {
                cfg.boundary = BoundaryRule::periodic_q;
            } else {
                fail(line, "grid.boundary: expected truncate or periodic, got '" + v + "'");
                return false;
            }
            return true;
        };

        number("physics.hbar", &cfg.hbar, pos, "must be positive");
        number("physics.m", &cfg.m, pos, "must be positive");
        number("physics.omega", &cfg.omega, pos, "must be positive");
        number("physics.c", &cfg.c, pos, "must be positive");
        number("physics.p0", &cfg.p0, any, "");
        number("physics.q0", &cfg.q0, any, "");
        number("physics.sigma_q", &cfg.sigma_q, pos, "must be positive");
        number("physics.sigma_p", &cfg.sigma_p, pos, "must be positive");
        number("physics.sigma_p_cells", &cfg.sigma_p_cells, nonneg, "must be >= 0");
        number("physics.beta", &cfg.beta, nonneg, "must be >= 0 (0 = hbar * omega)");

        number("slit.separation", &cfg.slit_separation, pos, "must be positive");
        number("slit.sigma", &cfg.slit_sigma, pos, "must be positive");
        number("slit.sigma_p", &cfg.slit_sigma_p, nonneg,
               "must be >= 0 (0 = 2 hbar / slit.sigma)");
        number("slit.screen_distance", &cfg.slit_screen_distance, pos,
               "must be positive");

        keys["quantize.branch"] = [this](const std::string& v, int line) {
            if (v == "cosine") {
                cfg.branch = StandingBranch::cosine;
            } else if (v == "sine") {
                cfg.branch = StandingBranch::sine;
            } else {
                fail(line, "quantize.branch: expected cosine or sine, got '" + v + "'");
                return false;
            }
            return true;
        };
        integer("quantize.n_max", &cfg.n_max, [](int n) { return n >= 0; },
                "must be >= 0");

        number("time.dt", &cfg.dt, pos, "must be positive");
        number("time.t_final", &cfg.t_final, nonneg, "must be >= 0");
        integer("time.snapshot_every", &cfg.snapshot_every,
                [](int n) { return n >= 0; }, "must be >= 0");

        keys["output.directory"] = [this](const std::string& v, int) {
            cfg.out_dir = v;
            return true;
        };
        integer("output.precision", &cfg.precision,
                [](int n) { return n >= 3 && n <= 17; }, "must be in [3, 17]");
    }

    void parse(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::string s = trim(raw);
            if (s.empty()) continue;
            std::size_t eq = s.find('=');
            if (eq == std::string::npos) {
                fail(line, "expected 'section.key = value': '" + s + "'");
                continue;
            }
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            auto it = keys.find(key);
            if (it == keys.end()) {
                fail(line, "unknown key '" + key + "'");
                continue;
            }
            auto dup = seen.find(key);
            if (dup != seen.end()) {
                fail(line, "duplicate key '" + key + "' (already set at line " +
                               std::to_string(dup->second) + ")");
                continue;
            }
            if (it->second(value, line)) seen[key] = line;
        }

        if (!scenario_set) fail(0, "run.scenario is required");
        if (!(cfg.q_max > cfg.q_min))
            fail(0, "grid.q_max must exceed grid.q_min");
        if (!(cfg.p_max > cfg.p_min))
            fail(0, "grid.p_max must exceed grid.p_min");
    }
};

}  // namespace

ParseResult parse_config(const std::string& text) {
    Parser p;
    p.parse(text);
    ParseResult res;
    res.errors = std::move(p.errors);
    if (res.errors.empty()) res.config = p.cfg;
    return res;
}

ParseResult parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult res;
        res.errors.push_back({0, "cannot open config file: " + path});
        return res;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_errors(const std::vector<ConfigError>& errors) {
    std::ostringstream out;
    for (const ConfigError& e : errors) {
        if (e.line > 0) out << "line " << e.line << ": ";
        out << e.message << '\n';
    }
    return out.str();
}

std::string echo_config(const RunConfig& cfg) {
    std::ostringstream out;
    auto num = [&](const char* key, double v) {
        out << key << " = " << format_double(v) << '\n';
    };
    out << "run.scenario = " << scenario_name(cfg.scenario) << '\n';
    num("grid.q_min", cfg.q_min);
    num("grid.q_max", cfg.q_max);
    num("grid.p_min", cfg.p_min);
    num("grid.p_max", cfg.p_max);
    out << "grid.nq = " << cfg.nq << '\n';
    out << "grid.np = " << cfg.np << '\n';
    out << "grid.boundary = "
        << (cfg.boundary == BoundaryRule::periodic_q ? "periodic" : "truncate") << '\n';
    num("physics.hbar", cfg.hbar);
    num("physics.m", cfg.m);
    num("physics.omega", cfg.omega);
    num("physics.c", cfg.c);
    num("physics.p0", cfg.p0);
    num("physics.q0", cfg.q0);
    num("physics.sigma_q", cfg.sigma_q);
    num("physics.sigma_p", cfg.sigma_p);
    num("physics.sigma_p_cells", cfg.sigma_p_cells);
    num("physics.beta", cfg.beta);
    num("slit.separation", cfg.slit_separation);
    num("slit.sigma", cfg.slit_sigma);
    num("slit.sigma_p", cfg.slit_sigma_p);
    num("slit.screen_distance", cfg.slit_screen_distance);
    out << "quantize.branch = "
        << (cfg.branch == StandingBranch::cosine ? "cosine" : "sine") << '\n';
    out << "quantize.n_max = " << cfg.n_max << '\n';
    num("time.dt", cfg.dt);
    num("time.t_final", cfg.t_final);
    out << "time.snapshot_every = " << cfg.snapshot_every << '\n';
    out << "output.directory = " << cfg.out_dir << '\n';
    out << "output.precision = " << cfg.precision << '\n';
    return out.str();
}

}  // namespace qphase
