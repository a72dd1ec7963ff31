#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "khmflow/config.hpp"

namespace khm::harness {

// Implementations behind the CLI subcommands; the binary is a thin wrapper
// so the tests can drive these directly.

void command_run(const Config& cfg, const std::filesystem::path& outdir);

void command_stats(const std::optional<Config>& cfg, const std::vector<std::filesystem::path>& snapshots,
                   const std::vector<double>& ells, const std::filesystem::path& outdir);

// Returns false when a hard invariant fails (nonzero exit upstream).
bool command_verify(const Config& cfg, const std::filesystem::path& traj_dir,
                    const std::filesystem::path& outdir, const std::vector<double>& ells_override,
                    const std::string& law_selection);

void command_sweep(const Config& cfg, const std::filesystem::path& outdir, int workers);

void command_fit(const std::filesystem::path& records_file, double alpha,
                 const std::filesystem::path& outdir);

}  // namespace khm::harness
