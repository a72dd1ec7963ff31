#pragma once

#include <vector>

#include "khmflow/field.hpp"
#include "khmflow/forcing.hpp"

namespace khm::solver {

using spectral::SpectralField;

enum class Integrator { IfRk4, IfRk2 };

struct SolverConfig {
    double nu = 0.1;                  // kinematic viscosity, > 0
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 50;         // steps between recorded snapshots
    Integrator integrator = Integrator::IfRk4;
    double cfl_limit = 0.5;           // dt <= cfl_limit * dx / max|v|, enforced per step
    bool disable_nonlinearity = false;  // Stokes mode, used by linear checks
};

struct LedgerRow {
    double t;
    double l2sq;   // ||v||_{L2}^2
    double h1sq;   // ||grad v||_{L2}^2
    double fv;     // <f, v>
};

// Time-ordered snapshots plus the per-step energy ledger.  cum_h1sq and
// cum_fv are the running integrals of h1sq and fv on the ledger grid,
// accumulated per step with Simpson using the RK mid-stage states (trapezoid
// for if_rk2), so the energy-balance residual converges at the integrator's
// order.
struct Trajectory {
    double nu = 0.0;
    std::vector<double> snapshot_times;
    std::vector<SpectralField> snapshots;
    std::vector<LedgerRow> ledger;
    std::vector<double> cum_h1sq;
    std::vector<double> cum_fv;

    const SpectralField& final_state() const { return snapshots.back(); }
    double t_end() const { return ledger.back().t; }
};

// Pseudo-spectral stepper for the forced incompressible Navier-Stokes
// equations on [0,2pi)^3: integrating-factor Runge-Kutta in spectral space,
// rotational-form nonlinearity with 2/3-rule dealiasing, Leray projection
// after every product.  The viscous factor exp(-nu |k|^2 dt) is applied
// exactly.
//
// Throws CflViolation when dt exceeds the CFL bound and NonFinite when any
// coefficient stops being finite.
class NseSolver {
  public:
    NseSolver(const spectral::GridSpec& grid, const forcing::ForcingSpec& forcing, SolverConfig config);

    // One step t -> t + dt. state is consumed and returned (move-friendly).
    SpectralField step(SpectralField state, double t);

    // Mid-stage field average from the last step, a 3rd-order-accurate sample
    // of v(t + dt/2); feeds the ledger quadrature.
    const SpectralField& last_midpoint() const { return midpoint_; }

    const SolverConfig& config() const { return config_; }

  private:
    SpectralField nonlinear_rhs(const SpectralField& state, double t, bool check_cfl);

    spectral::GridSpec grid_;
    forcing::ForcingSpec forcing_;
    SolverConfig config_;
    std::vector<double> decay_full_;   // exp(-nu |k|^2 dt)
    std::vector<double> decay_half_;   // exp(-nu |k|^2 dt/2)
    SpectralField midpoint_;
};

// Integrates from t = 0 to t_end; snapshots at the configured stride plus
// t = 0 and t_end; ledger filled every step.  The initial datum is dealiased
// and Leray-projected on entry (both no-ops for admissible data).
Trajectory run(const SpectralField& initial, const forcing::ForcingSpec& forcing, const SolverConfig& config);

// eps_nu(t) = 1/2||v(0)||^2 - 1/2||v(t)||^2 + int_0^t <f,v> dr, with the
// companion nu * int_0^t ||grad v||^2 dr.  t is resolved by linear
// interpolation of the cumulative ledger arrays; outside the run range
// throws OutOfRange.
struct EpsilonResult {
    double eps;
    double viscous_dissipation;
};
EpsilonResult epsilon_nu(const Trajectory& traj, double t);

// ||v(t)||^2 + 2 nu int_0^t ||grad v||^2 - ||v(0)||^2 - 2 int_0^t <f,v>;
// zero for resolved smooth runs.
double energy_balance_residual(const Trajectory& traj, double t);

// nu * int_0^{t_end} ||grad v||^2 dr.
double dissipation_integral(const Trajectory& traj);

struct HypothesisHReport {
    double sup_l2;        // ||v||_{L^inf(0,1;L2)}
    double lq_halpha;     // ||v||_{L^q(0,1;H^alpha)} on the snapshot grid
    double l1sigma_force; // ||f||_{L^{1+sigma}(0,1;L2)}
};
HypothesisHReport hypothesis_H_report(const Trajectory& traj, const forcing::ForcingSpec& forcing,
                                      double alpha, double q, double sigma);

}  // namespace khm::solver
