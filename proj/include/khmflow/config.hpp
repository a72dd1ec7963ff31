#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "khmflow/forcing.hpp"
#include "khmflow/laws.hpp"
#include "khmflow/solver.hpp"

namespace khm::harness {

// Flat key-value run configuration with dotted sections, e.g.
//
//   grid.n = 32
//   solver.nu = 0.1
//   forcing.family = fixed_mode
//   sweep.nus = 0.1,0.05
//
// '#' starts a comment; unknown keys are rejected.
class Config {
  public:
    static Config parse_file(const std::filesystem::path& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;
    spectral::Vec3i get_vec3i(const std::string& key, const spectral::Vec3i& fallback) const;

  private:
    std::map<std::string, std::string> values_;
};

spectral::GridSpec make_grid(const Config& cfg);
solver::SolverConfig make_solver_config(const Config& cfg);
forcing::ForcingSpec make_forcing(const Config& cfg);
spectral::SpectralField make_initial_field(const Config& cfg, const spectral::GridSpec& grid);
stats::SphericalQuadrature make_quadrature(const Config& cfg);
laws::InertialRange make_range(const Config& cfg, double nu);
std::vector<double> p_list(const Config& cfg);

}  // namespace khm::harness
