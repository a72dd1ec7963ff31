#include "khmflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "khmflow/errors.hpp"
#include "khmflow/spectral_ops.hpp"

namespace khm::harness {

namespace {

const std::set<std::string> kKnownKeys = {
    "grid.n",           "grid.dealias",
    "solver.nu",        "solver.dt",         "solver.t_end",    "solver.snapshot_stride",
    "solver.integrator",
    "init.family",      "init.amplitude",    "init.k",          "init.axis",
    "forcing.family",   "forcing.amplitude", "forcing.k",       "forcing.axis",
    "forcing.k2",       "forcing.axis2",     "forcing.period",  "forcing.ramp_theta",
    "forcing.inner",
    "range.alpha",      "range.q",           "range.kappa",     "range.ell_i",
    "range.n_ell",      "range.p_list",      "range.sigma",
    "quad.kind",        "quad.m",            "quad.n_theta",    "quad.n_phi",
    "sweep.nus",        "sweep.workers",
    "output.dir",
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int axis_from(const std::string& s, const std::string& key) {
    if (s == "x" || s == "0") return 0;
    if (s == "y" || s == "1") return 1;
    if (s == "z" || s == "2") return 2;
    throw ConfigError(key + ": expected axis x|y|z");
}

}  // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (!kKnownKeys.count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (cfg.values_.count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

double Config::get_double(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: " + it->second);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = get_double(key);
    const int i = int(v);
    if (double(i) != v) throw ConfigError("key '" + key + "': expected an integer");
    return i;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw ConfigError("key '" + key + "': empty list entry");
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': not a number: " + tok);
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

spectral::Vec3i Config::get_vec3i(const std::string& key, const spectral::Vec3i& fallback) const {
    if (!has(key)) return fallback;
    const std::vector<double> v = get_double_list(key);
    if (v.size() != 3) throw ConfigError("key '" + key + "': expected three integers");
    spectral::Vec3i out;
    for (int i = 0; i < 3; ++i) {
        out[i] = int(v[i]);
        if (double(out[i]) != v[i]) throw ConfigError("key '" + key + "': expected integers");
    }
    return out;
}

spectral::GridSpec make_grid(const Config& cfg) {
    try {
        return spectral::GridSpec(cfg.get_int("grid.n", 32), cfg.get_double("grid.dealias", 2.0 / 3.0));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

solver::SolverConfig make_solver_config(const Config& cfg) {
    solver::SolverConfig sc;
    sc.nu = cfg.get_double("solver.nu", 0.1);
    sc.dt = cfg.get_double("solver.dt", 1e-3);
    sc.t_end = cfg.get_double("solver.t_end", 1.0);
    sc.snapshot_stride = cfg.get_int("solver.snapshot_stride", 50);
    const std::string integ = cfg.get_string("solver.integrator", "if_rk4");
    if (integ == "if_rk4")
        sc.integrator = solver::Integrator::IfRk4;
    else if (integ == "if_rk2")
        sc.integrator = solver::Integrator::IfRk2;
    else
        throw ConfigError("solver.integrator: expected if_rk4 or if_rk2");
    return sc;
}

forcing::ForcingSpec make_forcing(const Config& cfg) {
    forcing::ForcingSpec spec;
    const std::string family = cfg.get_string("forcing.family", "zero");
    if (family == "zero")
        spec.family = forcing::Family::Zero;
    else if (family == "fixed_mode")
        spec.family = forcing::Family::FixedMode;
    else if (family == "alternating_shear")
        spec.family = forcing::Family::AlternatingShear;
    else if (family == "time_ramp")
        spec.family = forcing::Family::TimeRamp;
    else
        throw ConfigError("forcing.family: unknown family '" + family + "'");

    spec.k = cfg.get_vec3i("forcing.k", {1, 0, 0});
    spec.axis = axis_from(cfg.get_string("forcing.axis", "y"), "forcing.axis");
    spec.amplitude = cfg.get_double("forcing.amplitude", 0.0);
    spec.k2 = cfg.get_vec3i("forcing.k2", {0, 0, 1});
    spec.axis2 = axis_from(cfg.get_string("forcing.axis2", "x"), "forcing.axis2");
    spec.period = cfg.get_double("forcing.period", 1.0);
    spec.ramp_theta = cfg.get_double("forcing.ramp_theta", 0.0);
    const std::string inner = cfg.get_string("forcing.inner", "fixed_mode");
    if (inner == "fixed_mode")
        spec.inner = forcing::Family::FixedMode;
    else if (inner == "alternating_shear")
        spec.inner = forcing::Family::AlternatingShear;
    else
        throw ConfigError("forcing.inner: expected fixed_mode or alternating_shear");
    spec.validate();
    return spec;
}

spectral::SpectralField make_initial_field(const Config& cfg, const spectral::GridSpec& grid) {
    const std::string family = cfg.get_string("init.family", "taylor_green");
    const double amp = cfg.get_double("init.amplitude", 1.0);
    if (family == "zero") return spectral::zero_field(grid);
    if (family == "taylor_green") return spectral::taylor_green(grid, amp);
    if (family == "single_mode") {
        const spectral::Vec3i k = cfg.get_vec3i("init.k", {1, 0, 0});
        const int axis = axis_from(cfg.get_string("init.axis", "y"), "init.axis");
        try {
            return spectral::single_mode(grid, k, axis, spectral::Complex(amp, 0.0));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    throw ConfigError("init.family: unknown family '" + family + "'");
}

stats::SphericalQuadrature make_quadrature(const Config& cfg) {
    const std::string kind = cfg.get_string("quad.kind", "fibonacci");
    try {
        if (kind == "fibonacci") return stats::SphericalQuadrature::fibonacci(cfg.get_int("quad.m", 64));
        if (kind == "fibonacci_antipodal")
            return stats::SphericalQuadrature::fibonacci_antipodal(cfg.get_int("quad.m", 64));
        if (kind == "gauss_product")
            return stats::SphericalQuadrature::gauss_product(cfg.get_int("quad.n_theta", 8),
                                                             cfg.get_int("quad.n_phi", 16));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("quad.kind: unknown quadrature '" + kind + "'");
}

laws::InertialRange make_range(const Config& cfg, double nu) {
    try {
        return laws::InertialRange(nu, cfg.get_double("range.alpha", 1.0 / 3.0),
                                   cfg.get_double("range.q", 2.0), cfg.get_double("range.kappa", 1e-6),
                                   cfg.get_double("range.ell_i", 1.0), cfg.get_int("range.n_ell", 8));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> p_list(const Config& cfg) {
    if (!cfg.has("range.p_list")) return {1.0, 2.0, 4.0};
    return cfg.get_double_list("range.p_list");
}

}  // namespace khm::harness
