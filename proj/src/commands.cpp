#include "khmflow/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "khmflow/errors.hpp"
#include "khmflow/io.hpp"
#include "khmflow/laws.hpp"

namespace khm::harness {

namespace fs = std::filesystem;

namespace {

std::string cell_dir_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "cell_%03d", index);
    return buf;
}

std::string snapshot_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%06d.khm1", index);
    return buf;
}

void write_snapshots(const fs::path& dir, const solver::Trajectory& traj) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i)
        io::write_snapshot(dir / snapshot_name(int(i)), traj.snapshots[i], traj.nu,
                           traj.snapshot_times[i]);
}

struct LawCell {
    double nu = 0.0;
    double ell = 0.0;
    std::optional<double> khm;
    std::vector<double> r43, r45;
    double mod43 = 0.0, mod45 = 0.0;
    double eps1 = 0.0, eps_ell = 0.0, eps_bar = 0.0, eps_tilde = 0.0;
    double visc_l1 = 0.0, visc_bound_shape = 0.0;
};

LawCell evaluate_law_cell(const laws::TwoPointStats& stats, double ell,
                          const std::vector<double>& ps, const laws::InertialRange& range,
                          bool with_khm) {
    LawCell cell;
    cell.nu = stats.nu();
    cell.ell = ell;
    for (double p : ps) {
        cell.r43.push_back(laws::four_thirds_residual(stats, ell, p));
        cell.r45.push_back(laws::four_fifths_residual(stats, ell, p));
    }
    const laws::ModifiedLawResiduals mod = laws::modified_law_residuals(stats, ell);
    cell.mod43 = mod.modified_43;
    cell.mod45 = mod.modified_45;
    const laws::ModifiedEpsilons eps = laws::modified_epsilons(stats, ell);
    cell.eps1 = stats.epsilon(stats.final_index());
    cell.eps_ell = eps.eps_ell;
    cell.eps_bar = eps.eps_bar_ell;
    cell.eps_tilde = eps.eps_tilde_ell;

    std::vector<double> t(stats.n_times()), visc(stats.n_times());
    for (int i = 0; i < stats.n_times(); ++i) {
        t[i] = stats.time(i);
        visc[i] = std::abs(stats.at(i, ell).visc);
    }
    cell.visc_l1 = laws::trapezoid(t, visc);
    cell.visc_bound_shape =
        std::sqrt(stats.nu()) * std::pow(ell, 0.5 * range.alpha * range.q - 1.0);

    if (with_khm && stats.resolution() > 0.0 && 0.5 * ell > stats.resolution() &&
        1.5 * ell < laws::paper_constants::kPi) {
        laws::TestFunctionSpec eta;
        eta.phi = laws::BumpProfile(ell, 0.5 * ell);
        cell.khm = laws::khm_residual(stats, eta, t.back()).normalized();
    }
    return cell;
}

void write_law_report(const fs::path& path, const std::vector<LawCell>& cells,
                      const std::optional<laws::ExponentFit>& fit) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open report for writing: " + path.string());
    out << io::JsonLine().add("schema", 1LL).str() << '\n';
    for (const auto& c : cells) {
        io::JsonLine line;
        line.add("nu", c.nu).add("ell", c.ell);
        if (c.khm) line.add("khm", *c.khm);
        line.add_array("r43", c.r43)
            .add_array("r45", c.r45)
            .add("mod43", c.mod43)
            .add("mod45", c.mod45)
            .add("eps1", c.eps1)
            .add("eps_ell", c.eps_ell)
            .add("eps_bar_ell", c.eps_bar)
            .add("eps_tilde_ell", c.eps_tilde)
            .add("visc_l1", c.visc_l1)
            .add("visc_bound_shape", c.visc_bound_shape);
        out << line.str() << '\n';
    }
    if (fit) {
        out << io::JsonLine()
                   .add("zeta3_fit", fit->zeta_fit)
                   .add("zeta3_lo", fit->zeta3_lo)
                   .add("zeta3_hi", fit->zeta3_hi)
                   .str()
            << '\n';
    }
}

std::vector<stats::StructureRecord> collect_records(const laws::TrajectoryStats& tps,
                                                    const std::vector<double>& ells) {
    std::vector<stats::StructureRecord> records;
    for (int i = 0; i < tps.n_times(); ++i)
        for (double ell : ells) {
            stats::StructureRecord r = tps.at(i, ell);
            r.s3 = tps.s3(i, ell);
            records.push_back(r);
        }
    return records;
}

constexpr double kInvariantSlack = 1e-10;

bool check_epsilon_invariants(const std::vector<LawCell>& cells, std::vector<std::string>& violations) {
    bool ok = true;
    for (const auto& c : cells) {
        const double slack = kInvariantSlack * std::max(1.0, std::abs(c.eps1));
        if (c.eps_ell < c.eps1 - slack) {
            ok = false;
            violations.push_back("eps_ell < eps_nu(1) at nu=" + io::format_double(c.nu) +
                                 " ell=" + io::format_double(c.ell));
        }
        if (c.eps_tilde < c.eps1 - slack) {
            ok = false;
            violations.push_back("eps_tilde < eps_nu(1) at nu=" + io::format_double(c.nu) +
                                 " ell=" + io::format_double(c.ell));
        }
    }
    return ok;
}

}  // namespace

void command_run(const Config& cfg, const fs::path& outdir) {
    const spectral::GridSpec grid = make_grid(cfg);
    const solver::SolverConfig sc = make_solver_config(cfg);
    const forcing::ForcingSpec force = make_forcing(cfg);
    const spectral::SpectralField init = make_initial_field(cfg, grid);

    const solver::Trajectory traj = solver::run(init, force, sc);

    fs::create_directories(outdir);
    io::write_ledger(outdir / "ledger.ndjson", traj);
    write_snapshots(outdir / "snapshots", traj);

    const double alpha = cfg.get_double("range.alpha", 1.0 / 3.0);
    const double q = cfg.get_double("range.q", 2.0);
    const double sigma = cfg.get_double("range.sigma", 0.5);
    const solver::HypothesisHReport h = solver::hypothesis_H_report(traj, force, alpha, q, sigma);
    std::ofstream out(outdir / "hreport.ndjson", std::ios::trunc);
    out << io::JsonLine().add("schema", 1LL).str() << '\n'
        << io::JsonLine()
               .add("sup_l2", h.sup_l2)
               .add("lq_halpha", h.lq_halpha)
               .add("l1sigma_force", h.l1sigma_force)
               .add("alpha", alpha)
               .add("q", q)
               .add("sigma", sigma)
               .str()
        << '\n';
}

void command_stats(const std::optional<Config>& cfg, const std::vector<fs::path>& snapshots,
                   const std::vector<double>& ells, const fs::path& outdir) {
    if (snapshots.empty()) throw ConfigError("stats: no snapshot files given");
    if (ells.empty()) throw ConfigError("stats: empty ell list");
    const forcing::ForcingSpec force = cfg ? make_forcing(*cfg) : forcing::ForcingSpec{};
    const stats::SphericalQuadrature quad =
        cfg ? make_quadrature(*cfg) : stats::SphericalQuadrature::fibonacci(64);

    std::vector<stats::StructureRecord> records;
    for (const fs::path& p : snapshots) {
        const io::Snapshot snap = io::read_snapshot(p);
        const spectral::SpectralField v = snap.to_spectral();
        std::optional<spectral::SpectralField> f;
        if (force.family != forcing::Family::Zero)
            f = forcing::evaluate(force, snap.t, v.grid());
        stats::TwoPointKernel kern(v, f ? &*f : nullptr);
        for (double ell : ells)
            records.push_back(stats::evaluate_record(kern, snap.t, ell, quad, snap.nu, true));
    }
    fs::create_directories(outdir);
    io::write_records(outdir / "records.ndjson", records);
}

namespace {

solver::Trajectory load_trajectory(const fs::path& dir) {
    solver::Trajectory traj;
    traj.ledger = io::read_ledger(dir / "ledger.ndjson");
    if (traj.ledger.empty()) throw IoError("empty ledger in " + dir.string());

    std::vector<fs::path> files;
    const fs::path snapdir = dir / "snapshots";
    if (!fs::exists(snapdir)) throw IoError("missing snapshots directory in " + dir.string());
    for (const auto& e : fs::directory_iterator(snapdir))
        if (e.path().extension() == ".khm1") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no snapshots in " + snapdir.string());

    for (const fs::path& p : files) {
        const io::Snapshot snap = io::read_snapshot(p);
        traj.nu = snap.nu;
        traj.snapshot_times.push_back(snap.t);
        traj.snapshots.push_back(snap.to_spectral());
    }

    // disk path: cumulative ledger integrals rebuilt by trapezoid on the
    // fine per-step grid
    std::vector<double> t(traj.ledger.size()), h1(traj.ledger.size()), fv(traj.ledger.size());
    for (std::size_t i = 0; i < traj.ledger.size(); ++i) {
        t[i] = traj.ledger[i].t;
        h1[i] = traj.ledger[i].h1sq;
        fv[i] = traj.ledger[i].fv;
    }
    traj.cum_h1sq = laws::cumulative_trapezoid(t, h1);
    traj.cum_fv = laws::cumulative_trapezoid(t, fv);
    return traj;
}

}  // namespace

bool command_verify(const Config& cfg, const fs::path& traj_dir, const fs::path& outdir,
                    const std::vector<double>& ells_override, const std::string& law_selection) {
    const solver::Trajectory traj = load_trajectory(traj_dir);
    const forcing::ForcingSpec force = make_forcing(cfg);
    laws::TrajectoryStats stats_src(traj, force, make_quadrature(cfg));

    const laws::InertialRange range = make_range(cfg, traj.nu);
    const std::vector<double> ells = ells_override.empty() ? range.ells() : ells_override;
    const std::vector<double> ps = p_list(cfg);
    const bool with_khm = law_selection == "all" || law_selection.find("khm") != std::string::npos;

    std::vector<LawCell> cells;
    for (double ell : ells) cells.push_back(evaluate_law_cell(stats_src, ell, ps, range, with_khm));

    std::optional<laws::ExponentFit> fit;
    if (ells.size() >= 5) {
        try {
            fit = laws::exponent_fit_from_stats(stats_src, ells, range.alpha);
        } catch (const DegenerateData&) {
            // zero or sign-indefinite structure integrals: report without a fit
        }
    }

    fs::create_directories(outdir);
    write_law_report(outdir / "report.ndjson", cells, fit);

    std::vector<std::string> violations;
    const bool ok = check_epsilon_invariants(cells, violations);
    std::ofstream vout(outdir / "verify.txt", std::ios::trunc);
    vout << (ok ? "OK" : "INVARIANT VIOLATIONS") << '\n';
    for (const auto& v : violations) vout << v << '\n';
    return ok;
}

void command_sweep(const Config& cfg, const fs::path& outdir, int workers) {
    const std::vector<double> nus = cfg.has("sweep.nus") ? cfg.get_double_list("sweep.nus")
                                                         : std::vector<double>{cfg.get_double("solver.nu", 0.1)};
    for (double nu : nus)
        if (nu <= 0.0) throw ConfigError("sweep.nus: viscosities must be positive");
    if (workers <= 0) workers = cfg.get_int("sweep.workers", 1);
    workers = std::max(1, std::min<int>(workers, int(nus.size())));

    // shared ell lattice: the largest nu has the largest ell_D, so its range
    // is inside every other cell's inertial range
    const double nu_max = *std::max_element(nus.begin(), nus.end());
    const laws::InertialRange shared_range = make_range(cfg, nu_max);
    const std::vector<double> ells = shared_range.ells();
    const std::vector<double> ps = p_list(cfg);

    fs::create_directories(outdir);

    struct CellResult {
        std::vector<LawCell> cells;
        std::optional<laws::ExponentFit> fit;
        double dissipation = 0.0;
    };
    std::vector<CellResult> results(nus.size());

    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= int(nus.size())) break;
            try {
                const spectral::GridSpec grid = make_grid(cfg);
                solver::SolverConfig sc = make_solver_config(cfg);
                sc.nu = nus[i];
                const forcing::ForcingSpec force = make_forcing(cfg);
                const spectral::SpectralField init = make_initial_field(cfg, grid);
                const solver::Trajectory traj = solver::run(init, force, sc);

                const fs::path cell_dir = outdir / cell_dir_name(i);
                fs::create_directories(cell_dir);
                io::write_ledger(cell_dir / "ledger.ndjson", traj);
                write_snapshots(cell_dir / "snapshots", traj);

                laws::TrajectoryStats stats_src(traj, force, make_quadrature(cfg));
                io::write_records(cell_dir / "records.ndjson", collect_records(stats_src, ells));

                const laws::InertialRange cell_range = make_range(cfg, nus[i]);
                CellResult res;
                for (double ell : ells)
                    res.cells.push_back(evaluate_law_cell(stats_src, ell, ps, cell_range, false));
                if (ells.size() >= 5) {
                    try {
                        res.fit = laws::exponent_fit_from_stats(stats_src, ells, cell_range.alpha);
                    } catch (const DegenerateData&) {
                    }
                }
                res.dissipation = solver::dissipation_integral(traj);
                write_law_report(cell_dir / "report.ndjson", res.cells, res.fit);
                results[i] = std::move(res);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    // summary.csv: one row per (nu, ell) with the first-p residuals
    std::ofstream csv(outdir / "summary.csv", std::ios::trunc);
    csv << "nu,ell,r43_Lp,r45_Lp,eps1,eps_ell,slope_zeta3\n";
    for (std::size_t i = 0; i < nus.size(); ++i) {
        const CellResult& res = results[i];
        const std::string slope = res.fit ? io::format_double(res.fit->zeta_fit) : "";
        for (const LawCell& c : res.cells)
            csv << io::format_double(c.nu) << ',' << io::format_double(c.ell) << ','
                << io::format_double(c.r43.front()) << ',' << io::format_double(c.r45.front()) << ','
                << io::format_double(c.eps1) << ',' << io::format_double(c.eps_ell) << ',' << slope
                << '\n';
    }
    csv.close();

    // dissipation probe across the sweep
    std::vector<laws::DissipationProbeRow> rows;
    for (std::size_t i = 0; i < nus.size(); ++i) rows.push_back({nus[i], results[i].dissipation});
    const laws::DissipationProbe probe = laws::anomalous_dissipation_probe(std::move(rows));
    std::ofstream probe_out(outdir / "dissipation.ndjson", std::ios::trunc);
    probe_out << io::JsonLine().add("schema", 1LL).str() << '\n';
    for (const auto& r : probe.rows)
        probe_out << io::JsonLine()
                         .add("nu", r.nu)
                         .add("dissipation", r.dissipation)
                         .add("threshold", probe.threshold)
                         .str()
                  << '\n';

    // monotone-trend summary over the shared lattice
    std::ofstream trends(outdir / "trends.txt", std::ios::trunc);
    std::vector<std::size_t> order(nus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nus[a] > nus[b]; });
    for (std::size_t e = 0; e < ells.size(); ++e) {
        int dec = 0, total = 0;
        for (std::size_t j = 1; j < order.size(); ++j) {
            const double prev = results[order[j - 1]].cells[e].r43.front();
            const double cur = results[order[j]].cells[e].r43.front();
            ++total;
            if (cur <= prev) ++dec;
        }
        if (total > 0)
            trends << "r43 vs nu (decreasing nu) at ell=" << io::format_double(ells[e]) << ": " << dec
                   << "/" << total << " pairs decreasing\n";
    }
    for (std::size_t i = 0; i < nus.size(); ++i) {
        int dec = 0, total = 0;
        for (std::size_t e = 1; e < ells.size(); ++e) {
            ++total;
            if (results[i].cells[e - 1].r43.front() <= results[i].cells[e].r43.front()) ++dec;
        }
        if (total > 0)
            trends << "r43 vs ell (decreasing ell) at nu=" << io::format_double(nus[i]) << ": " << dec
                   << "/" << total << " pairs decreasing\n";
    }
}

void command_fit(const fs::path& records_file, double alpha, const fs::path& outdir) {
    const std::vector<stats::StructureRecord> records = io::read_records(records_file);
    if (records.empty()) throw DegenerateData("fit: no records");

    std::map<double, std::vector<std::pair<double, double>>> by_ell;  // ell -> (t, s3)
    for (const auto& r : records) by_ell[r.ell].emplace_back(r.t, r.s3);

    std::vector<std::pair<double, double>> pts;
    for (auto& [ell, series] : by_ell) {
        std::sort(series.begin(), series.end());
        if (series.size() == 1) {
            pts.emplace_back(ell, series.front().second);
            continue;
        }
        std::vector<double> t, s;
        for (const auto& [tt, ss] : series) {
            t.push_back(tt);
            s.push_back(ss);
        }
        pts.emplace_back(ell, laws::trapezoid(t, s));
    }
    const laws::ExponentFit fit = laws::exponent_fit(pts, alpha);

    fs::create_directories(outdir);
    std::ofstream out(outdir / "fit.csv", std::ios::trunc);
    out << "ell,s3_time_integral\n";
    for (const auto& [ell, integral] : pts)
        out << io::format_double(ell) << ',' << io::format_double(integral) << '\n';
    out << "zeta3_fit," << io::format_double(fit.zeta_fit) << '\n';
    out << "zeta3_lo," << io::format_double(fit.zeta3_lo) << '\n';
    out << "zeta3_hi," << io::format_double(fit.zeta3_hi) << '\n';
    std::printf("zeta3_fit=%s band=[%s, %s]\n", io::format_double(fit.zeta_fit).c_str(),
                io::format_double(fit.zeta3_lo).c_str(), io::format_double(fit.zeta3_hi).c_str());
}

}  // namespace khm::harness
