// khm: pseudo-spectral Navier-Stokes runs and scale-space turbulence
// statistics on the periodic box.
//
// Subcommands: run, stats, verify, sweep, fit.  Exit codes: 0 success,
// 1 invariant violation (verify), 2 configuration error, 3 numerical or
// I/O failure.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "khmflow/commands.hpp"
#include "khmflow/errors.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& csv) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const auto comma = csv.find(',', start);
        const std::string tok = csv.substr(start, comma == std::string::npos ? csv.size() - start
                                                                             : comma - start);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral Navier-Stokes + scale-space statistics"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", ell_csv, p_csv, records_path, traj_dir;
    std::string law_selection = "all";
    int workers = 0;
    double fit_alpha = 0.32;
    std::vector<std::string> snapshot_files;

    CLI::App* run = app.add_subcommand("run", "integrate one trajectory and write artifacts");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory");

    CLI::App* stats = app.add_subcommand("stats", "two-point statistics of snapshot files");
    stats->add_option("--config", config_path, "config file (forcing + quadrature)");
    stats->add_option("--out", out_dir, "output directory");
    stats->add_option("--ell-list", ell_csv, "comma-separated scales")->required();
    stats->add_option("snapshots", snapshot_files, "KHM1 snapshot files")->required();

    CLI::App* verify = app.add_subcommand("verify", "law residuals and hard invariants");
    verify->add_option("--config", config_path, "config file")->required();
    verify->add_option("--out", out_dir, "output directory");
    verify->add_option("--ell-list", ell_csv, "scales (default: inertial range)");
    verify->add_option("--laws", law_selection, "law selection (all|khm|basic)");
    verify->add_option("trajectory", traj_dir, "trajectory directory from 'run'")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "vanishing-viscosity sweep");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--workers", workers, "concurrent cells");

    CLI::App* fit = app.add_subcommand("fit", "third-order exponent fit from records");
    fit->add_option("--out", out_dir, "output directory");
    fit->add_option("--alpha", fit_alpha, "Hoelder exponent for the [3a,1] band");
    fit->add_option("records", records_path, "records.ndjson")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            khm::harness::command_run(khm::harness::Config::parse_file(config_path), out_dir);
        } else if (stats->parsed()) {
            std::optional<khm::harness::Config> cfg;
            if (!config_path.empty()) cfg = khm::harness::Config::parse_file(config_path);
            std::vector<std::filesystem::path> paths(snapshot_files.begin(), snapshot_files.end());
            khm::harness::command_stats(cfg, paths, parse_csv_doubles(ell_csv), out_dir);
        } else if (verify->parsed()) {
            const bool ok = khm::harness::command_verify(
                khm::harness::Config::parse_file(config_path), traj_dir, out_dir,
                ell_csv.empty() ? std::vector<double>{} : parse_csv_doubles(ell_csv), law_selection);
            if (!ok) {
                std::fprintf(stderr, "verify: hard invariant violated (see verify.txt)\n");
                return 1;
            }
        } else if (sweep->parsed()) {
            khm::harness::command_sweep(khm::harness::Config::parse_file(config_path), out_dir, workers);
        } else if (fit->parsed()) {
            khm::harness::command_fit(records_path, fit_alpha, out_dir);
        }
    } catch (const khm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
