#include "khmflow/solver.hpp"

#include <cmath>
#include <utility>

#include "khmflow/errors.hpp"
#include "khmflow/fft.hpp"
#include "khmflow/spectral_ops.hpp"

namespace khm::solver {

using spectral::Complex;
using spectral::GridSpec;
using spectral::PhysicalField;

namespace {

void scale_by(SpectralField& f, const std::vector<double>& factors) {
    for (int c = 0; c < 3; ++c) {
        auto& a = f.component(c);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] *= factors[i];
    }
}

void axpy(SpectralField& y, double alpha, const SpectralField& x) {
    for (int c = 0; c < 3; ++c) {
        auto& ya = y.component(c);
        const auto& xa = x.component(c);
        for (std::size_t i = 0; i < ya.size(); ++i) ya[i] += alpha * xa[i];
    }
}

std::vector<double> viscous_factors(const GridSpec& g, double nu, double dt) {
    std::vector<double> f(g.points());
    const int n = g.n;
    for (int i = 0; i < n; ++i) {
        const int ki = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int kj = g.wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const int kk = g.wavenumber(k);
                f[g.flat(i, j, k)] = std::exp(-nu * double(ki * ki + kj * kj + kk * kk) * dt);
            }
        }
    }
    return f;
}

}  // namespace

NseSolver::NseSolver(const GridSpec& grid, const forcing::ForcingSpec& forcing, SolverConfig config)
    : grid_(grid), forcing_(forcing), config_(config), midpoint_(grid) {
    if (config_.nu <= 0.0) throw ConfigError("solver: nu must be positive");
    if (config_.dt <= 0.0) throw ConfigError("solver: dt must be positive");
    if (config_.t_end <= 0.0 || config_.t_end > 1.0 + 1e-12)
        throw ConfigError("solver: t_end must lie in (0, 1]");
    forcing_.validate();
    decay_full_ = viscous_factors(grid_, config_.nu, config_.dt);
    decay_half_ = viscous_factors(grid_, config_.nu, 0.5 * config_.dt);
}

SpectralField NseSolver::nonlinear_rhs(const SpectralField& state, double t, bool check_cfl) {
    SpectralField rhs(grid_);
    if (!config_.disable_nonlinearity) {
        const int n = grid_.n;
        const std::int64_t count = grid_.points();

        // velocity and vorticity to physical space
        std::vector<Complex> scratch(count);
        std::array<std::vector<double>, 3> v, w;
        for (int c = 0; c < 3; ++c) state.to_physical_component(c, scratch, v[c]);

        SpectralField curl(grid_);
        for (int i = 0; i < n; ++i) {
            const double ki = grid_.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const double kj = grid_.wavenumber(j);
                for (int k = 0; k < n; ++k) {
                    const double kk = grid_.wavenumber(k);
                    const std::int64_t p = grid_.flat(i, j, k);
                    const Complex iu(0.0, 1.0);
                    const Complex a0 = state.component(0)[p];
                    const Complex a1 = state.component(1)[p];
                    const Complex a2 = state.component(2)[p];
                    curl.component(0)[p] = iu * (kj * a2 - kk * a1);
                    curl.component(1)[p] = iu * (kk * a0 - ki * a2);
                    curl.component(2)[p] = iu * (ki * a1 - kj * a0);
                }
            }
        }
        for (int c = 0; c < 3; ++c) curl.to_physical_component(c, scratch, w[c]);

        if (check_cfl) {
            double vmax = 0.0;
            for (int c = 0; c < 3; ++c)
                for (double x : v[c]) vmax = std::max(vmax, std::abs(x));
            if (vmax > 0.0 && config_.dt > config_.cfl_limit * grid_.dx() / vmax)
                throw CflViolation("dt exceeds CFL bound: dt=" + std::to_string(config_.dt) +
                                   " limit=" + std::to_string(config_.cfl_limit * grid_.dx() / vmax));
        }

        // rotational form: v x omega; the |v|^2/2 gradient is absorbed by the
        // projection
        PhysicalField cross(grid_);
        for (std::int64_t p = 0; p < count; ++p) {
            const double vx = v[0][p], vy = v[1][p], vz = v[2][p];
            const double wx = w[0][p], wy = w[1][p], wz = w[2][p];
            cross.component(0)[p] = vy * wz - vz * wy;
            cross.component(1)[p] = vz * wx - vx * wz;
            cross.component(2)[p] = vx * wy - vy * wx;
        }
        rhs = SpectralField::from_physical(cross);
        rhs.zero_outside_band();
        rhs = leray_project(rhs);
    }

    if (forcing_.family != forcing::Family::Zero) {
        SpectralField f = forcing::evaluate(forcing_, t, grid_);
        f.zero_outside_band();
        axpy(rhs, 1.0, f);
    }
    return rhs;
}

SpectralField NseSolver::step(SpectralField state, double t) {
    const double dt = config_.dt;

    if (config_.integrator == Integrator::IfRk2) {
        // IF-Heun: exact viscous factor, second order in the nonlinearity.
        SpectralField a = nonlinear_rhs(state, t, true);
        SpectralField u1 = state;
        axpy(u1, dt, a);
        scale_by(u1, decay_full_);
        SpectralField b = nonlinear_rhs(u1, t + dt, false);
        scale_by(state, decay_full_);
        scale_by(a, decay_full_);
        axpy(state, 0.5 * dt, a);
        axpy(state, 0.5 * dt, b);
        midpoint_ = state;  // rk2 has no mid-stage; ledger falls back to trapezoid
        if (!state.all_finite()) throw NonFinite("non-finite coefficient after step");
        return state;
    }

    // IF-RK4 (classical RK4 on the integrating-factor transformed system)
    const SpectralField v_n = state;
    SpectralField a = nonlinear_rhs(state, t, true);

    SpectralField u1 = state;
    axpy(u1, 0.5 * dt, a);
    scale_by(u1, decay_half_);
    SpectralField b = nonlinear_rhs(u1, t + 0.5 * dt, false);

    SpectralField u2 = state;
    scale_by(u2, decay_half_);
    axpy(u2, 0.5 * dt, b);
    SpectralField c = nonlinear_rhs(u2, t + 0.5 * dt, false);

    SpectralField u3 = state;
    scale_by(u3, decay_full_);
    SpectralField ec = c;
    scale_by(ec, decay_half_);
    axpy(u3, dt, ec);
    SpectralField d = nonlinear_rhs(u3, t + dt, false);

    scale_by(state, decay_full_);
    scale_by(a, decay_full_);
    axpy(state, dt / 6.0, a);
    SpectralField bc = b;
    axpy(bc, 1.0, c);
    scale_by(bc, decay_half_);
    axpy(state, dt / 3.0, bc);
    axpy(state, dt / 6.0, d);

    if (!state.all_finite()) throw NonFinite("non-finite coefficient after step");

    // Midpoint sample for the ledger quadrature: cubic Hermite across the
    // step in the integrating-factor frame,
    //   v_mid = (E v_n + E^{-1} v_{n+1})/2 + dt/8 (E a/E_full... )
    // expressed per mode with E = exp(-nu k^2 dt/2).  The slopes are the
    // endpoint RHS values a and d, both already available.  Modes with
    // nu k^2 dt/2 > 1 fall back to the stage average u1/u2 so the inverse
    // factor never amplifies.
    midpoint_ = v_n;
    {
        // a was scaled by decay_full_ above; undo to the original value once.
        const std::int64_t count = grid_.points();
        for (int cc = 0; cc < 3; ++cc) {
            auto& mid = midpoint_.component(cc);
            const auto& vn = v_n.component(cc);
            const auto& vnext = state.component(cc);
            const auto& af = a.component(cc);  // = decay_full * a_orig
            const auto& dd = d.component(cc);
            const auto& s1 = u1.component(cc);
            const auto& s2 = u2.component(cc);
            for (std::int64_t i = 0; i < count; ++i) {
                const double E = decay_half_[i];
                if (E >= 0.36787944117144233) {
                    const double Einv = 1.0 / E;
                    // E * a_orig = a_scaled / E (since a_scaled = E^2 a_orig)
                    const Complex slope_term = af[i] * Einv - dd[i] * Einv;
                    mid[i] = 0.5 * (E * vn[i] + Einv * vnext[i]) + (dt / 8.0) * slope_term;
                } else {
                    mid[i] = 0.5 * (s1[i] + s2[i]);
                }
            }
        }
    }
    return state;
}

Trajectory run(const SpectralField& initial, const forcing::ForcingSpec& forcing, const SolverConfig& config) {
    const GridSpec& grid = initial.grid();
    if (config.dt <= 0.0) throw ConfigError("solver: dt must be positive");
    const long long n_steps = std::llround(config.t_end / config.dt);
    if (n_steps < 1) throw ConfigError("solver: t_end shorter than one step");
    SolverConfig cfg = config;
    cfg.dt = config.t_end / double(n_steps);  // land on t_end exactly

    Trajectory traj;
    traj.nu = cfg.nu;

    SpectralField state = initial;
    state.zero_outside_band();
    state = leray_project(state);

    auto ledger_row = [&](double t, const SpectralField& s) {
        LedgerRow row;
        row.t = t;
        row.l2sq = s.l2_sq();
        row.h1sq = s.h1_sq();
        row.fv = forcing.family == forcing::Family::Zero
                     ? 0.0
                     : SpectralField::inner(forcing::evaluate(forcing, t, grid), s);
        return row;
    };

    traj.ledger.push_back(ledger_row(0.0, state));
    traj.cum_h1sq.push_back(0.0);
    traj.cum_fv.push_back(0.0);
    traj.snapshot_times.push_back(0.0);
    traj.snapshots.push_back(state);

    NseSolver stepper(grid, forcing, cfg);
    for (long long step = 0; step < n_steps; ++step) {
        const double t0 = double(step) * cfg.dt;
        const double t1 = double(step + 1) * cfg.dt;
        const LedgerRow& prev = traj.ledger.back();

        state = stepper.step(std::move(state), t0);
        LedgerRow row = ledger_row(t1, state);

        double inc_h1, inc_fv;
        if (cfg.integrator == Integrator::IfRk4) {
            const SpectralField& mid = stepper.last_midpoint();
            const double tm = t0 + 0.5 * cfg.dt;
            const double h1m = mid.h1_sq();
            const double fvm = forcing.family == forcing::Family::Zero
                                   ? 0.0
                                   : SpectralField::inner(forcing::evaluate(forcing, tm, grid), mid);
            inc_h1 = cfg.dt / 6.0 * (prev.h1sq + 4.0 * h1m + row.h1sq);
            inc_fv = cfg.dt / 6.0 * (prev.fv + 4.0 * fvm + row.fv);
        } else {
            inc_h1 = 0.5 * cfg.dt * (prev.h1sq + row.h1sq);
            inc_fv = 0.5 * cfg.dt * (prev.fv + row.fv);
        }
        traj.cum_h1sq.push_back(traj.cum_h1sq.back() + inc_h1);
        traj.cum_fv.push_back(traj.cum_fv.back() + inc_fv);
        traj.ledger.push_back(row);

        const bool at_stride = cfg.snapshot_stride > 0 && (step + 1) % cfg.snapshot_stride == 0;
        if (at_stride || step + 1 == n_steps) {
            if (traj.snapshot_times.back() < t1) {
                traj.snapshot_times.push_back(t1);
                traj.snapshots.push_back(state);
            }
        }
    }
    return traj;
}

namespace {

struct LedgerLocation {
    std::size_t i0, i1;
    double w;  // interpolation weight toward i1
};

LedgerLocation locate(const Trajectory& traj, double t) {
    const double t_end = traj.ledger.back().t;
    if (t < -1e-12 || t > t_end + 1e-12)
        throw OutOfRange("time " + std::to_string(t) + " outside trajectory range [0, " +
                         std::to_string(t_end) + "]");
    const double dt = traj.ledger.size() > 1 ? traj.ledger[1].t - traj.ledger[0].t : 1.0;
    double pos = t / dt;
    pos = std::min(std::max(pos, 0.0), double(traj.ledger.size() - 1));
    std::size_t i0 = static_cast<std::size_t>(pos);
    if (i0 + 1 >= traj.ledger.size()) return {traj.ledger.size() - 1, traj.ledger.size() - 1, 0.0};
    return {i0, i0 + 1, pos - double(i0)};
}

double lerp(const std::vector<double>& a, const LedgerLocation& loc) {
    return (1.0 - loc.w) * a[loc.i0] + loc.w * a[loc.i1];
}

}  // namespace

EpsilonResult epsilon_nu(const Trajectory& traj, double t) {
    const LedgerLocation loc = locate(traj, t);
    std::vector<double> l2(traj.ledger.size());
    for (std::size_t i = 0; i < traj.ledger.size(); ++i) l2[i] = traj.ledger[i].l2sq;
    const double l2t = lerp(l2, loc);
    const double cum_fv = lerp(traj.cum_fv, loc);
    const double cum_h1 = lerp(traj.cum_h1sq, loc);
    EpsilonResult r;
    r.eps = 0.5 * traj.ledger.front().l2sq - 0.5 * l2t + cum_fv;
    r.viscous_dissipation = traj.nu * cum_h1;
    return r;
}

double energy_balance_residual(const Trajectory& traj, double t) {
    const LedgerLocation loc = locate(traj, t);
    std::vector<double> l2(traj.ledger.size());
    for (std::size_t i = 0; i < traj.ledger.size(); ++i) l2[i] = traj.ledger[i].l2sq;
    const double l2t = lerp(l2, loc);
    return l2t + 2.0 * traj.nu * lerp(traj.cum_h1sq, loc) - traj.ledger.front().l2sq -
           2.0 * lerp(traj.cum_fv, loc);
}

double dissipation_integral(const Trajectory& traj) { return traj.nu * traj.cum_h1sq.back(); }

HypothesisHReport hypothesis_H_report(const Trajectory& traj, const forcing::ForcingSpec& forcing,
                                      double alpha, double q, double sigma) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("hypothesis_H_report: alpha in (0,1)");
    if (!(q >= 1.0 && q <= 2.0)) throw std::invalid_argument("hypothesis_H_report: q in [1,2]");
    HypothesisHReport r{0.0, 0.0, 0.0};
    for (const LedgerRow& row : traj.ledger) r.sup_l2 = std::max(r.sup_l2, std::sqrt(row.l2sq));

    // H^alpha on the snapshot grid, trapezoid in time
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < traj.snapshots.size(); ++i) {
        const double f0 = std::pow(spectral::norms(traj.snapshots[i], alpha).h_alpha, q);
        const double f1 = std::pow(spectral::norms(traj.snapshots[i + 1], alpha).h_alpha, q);
        acc += 0.5 * (f0 + f1) * (traj.snapshot_times[i + 1] - traj.snapshot_times[i]);
    }
    r.lq_halpha = traj.snapshots.size() > 1 ? std::pow(acc, 1.0 / q)
                                            : spectral::norms(traj.snapshots.front(), alpha).h_alpha;
    r.l1sigma_force = forcing::force_integrability(forcing, sigma);
    return r;
}

}  // namespace khm::solver
