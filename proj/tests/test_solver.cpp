#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "khmflow/errors.hpp"
#include "khmflow/solver.hpp"
#include "khmflow/spectral_ops.hpp"
#include "oracles.hpp"

using namespace khm;
using namespace khm::solver;
using spectral::Complex;
using spectral::GridSpec;
using spectral::kBoxVolume;
using spectral::SpectralField;

namespace {

const GridSpec kGrid(16);

double rel_field_error(const SpectralField& a, const SpectralField& b) {
    double num = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.component(c).size(); ++i)
            num += std::norm(a.component(c)[i] - b.component(c)[i]);
    const double den = b.l2_sq() / kBoxVolume;
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

SolverConfig quick_config(double nu, double dt, double t_end, int stride = 50) {
    SolverConfig c;
    c.nu = nu;
    c.dt = dt;
    c.t_end = t_end;
    c.snapshot_stride = stride;
    return c;
}

}  // namespace

TEST_CASE("zero field with zero force stays zero") {
    const Trajectory traj = run(SpectralField(kGrid), forcing::ForcingSpec{}, quick_config(0.1, 1e-2, 0.2));
    CHECK(traj.final_state().max_coeff_abs() == 0.0);
    CHECK(epsilon_nu(traj, 0.2).eps == 0.0);
    CHECK(energy_balance_residual(traj, 0.2) == 0.0);
}

TEST_CASE("taylor-green decays exactly at rate 2 nu") {
    const double nu = 0.1, T = 0.25;
    const SpectralField v0 = spectral::taylor_green(kGrid);
    const Trajectory traj = run(v0, forcing::ForcingSpec{}, quick_config(nu, 1e-3, T));

    SpectralField expected = v0;
    const double decay = std::exp(-2.0 * nu * T);
    for (int c = 0; c < 3; ++c)
        for (auto& z : expected.component(c)) z *= decay;
    CHECK(rel_field_error(traj.final_state(), expected) < 1e-9);
}

TEST_CASE("stokes mode decays with the exact viscous factor") {
    SolverConfig cfg = quick_config(0.3, 1e-2, 0.5);
    cfg.disable_nonlinearity = true;
    const SpectralField v0 = spectral::single_mode(kGrid, {1, 1, 0}, 2, Complex(1.0, 0.0));
    const Trajectory traj = run(v0, forcing::ForcingSpec{}, cfg);
    const Complex got = traj.final_state().coeff(2, {1, 1, 0});
    const Complex expected = Complex(std::exp(-0.3 * 2.0 * 0.5), 0.0);
    CHECK(std::abs(got - expected) < 1e-12);
}

TEST_CASE("linear response of a shear mode reaches f/(nu k^2)(1-e^{-nu k^2 t})") {
    forcing::ForcingSpec force;
    force.family = forcing::Family::FixedMode;
    force.k = {1, 0, 0};
    force.axis = 1;
    force.amplitude = 1e-3;
    const double nu = 0.5, T = 1.0;
    const Trajectory traj = run(SpectralField(kGrid), force, quick_config(nu, 1e-3, T));
    const double expected = force.amplitude / nu * (1.0 - std::exp(-nu * T));
    const Complex got = traj.final_state().coeff(1, {1, 0, 0});
    CHECK(std::abs(got - Complex(expected, 0.0)) / expected < 1e-8);
}

TEST_CASE("epsilon_nu on taylor-green matches the closed form") {
    const double nu = 0.1, T = 0.25;
    const Trajectory traj = run(spectral::taylor_green(kGrid), forcing::ForcingSpec{},
                                quick_config(nu, 1e-3, T));
    const double expected = 0.25 * kBoxVolume * (1.0 - std::exp(-4.0 * nu * T));
    const EpsilonResult r = epsilon_nu(traj, T);
    CHECK(std::abs(r.eps - expected) / expected < 1e-10);
    // energy equality: eps equals the viscous dissipation integral
    CHECK(std::abs(r.eps - r.viscous_dissipation) / expected < 1e-6);
}

TEST_CASE("energy balance residual is tiny on taylor-green") {
    // the TG nonlinearity is annihilated exactly, so the residual sits at the
    // floor; the convergence-order check below uses an active nonlinearity
    const double nu = 0.1, T = 0.25;
    const SpectralField v0 = spectral::taylor_green(kGrid);
    const Trajectory traj = run(v0, forcing::ForcingSpec{}, quick_config(nu, 1e-3, T));
    CHECK(std::abs(energy_balance_residual(traj, T)) / v0.l2_sq() < 1e-12);
}

TEST_CASE("energy balance residual converges at fourth order") {
    const double nu = 0.05, T = 0.5;
    SpectralField v0 = spectral::taylor_green(kGrid);
    const SpectralField pert = oracle::random_solenoidal(kGrid, 5, 3, 10, 0.15);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < v0.component(c).size(); ++i)
            v0.component(c)[i] += pert.component(c)[i];
    const Trajectory coarse = run(v0, forcing::ForcingSpec{}, quick_config(nu, 4e-3, T));
    const Trajectory fine = run(v0, forcing::ForcingSpec{}, quick_config(nu, 2e-3, T));
    const double r_coarse = std::abs(energy_balance_residual(coarse, T));
    const double r_fine = std::abs(energy_balance_residual(fine, T));
    CHECK(r_coarse / v0.l2_sq() < 1e-6);
    CHECK(r_coarse / r_fine >= 8.0);
}

TEST_CASE("discrete energy is non-increasing without forcing") {
    const SpectralField v0 = oracle::random_solenoidal(kGrid, 21, 3, 8, 0.05);
    const Trajectory traj = run(v0, forcing::ForcingSpec{}, quick_config(0.05, 2e-3, 0.1, 10));
    for (std::size_t i = 1; i < traj.ledger.size(); ++i)
        CHECK(traj.ledger[i].l2sq <= traj.ledger[i - 1].l2sq * (1.0 + 1e-13));
}

TEST_CASE("epsilon_nu is non-decreasing in t without forcing") {
    const SpectralField v0 = oracle::random_solenoidal(kGrid, 22, 3, 8, 0.05);
    const Trajectory traj = run(v0, forcing::ForcingSpec{}, quick_config(0.05, 2e-3, 0.1, 10));
    double prev = -1.0;
    for (double t : {0.0, 0.02, 0.04, 0.06, 0.08, 0.1}) {
        const double e = epsilon_nu(traj, t).eps;
        CHECK(e >= prev - 1e-14);
        prev = e;
    }
}

TEST_CASE("restart from a mid-run snapshot reproduces the tail") {
    const double nu = 0.05;
    const SpectralField v0 = oracle::random_solenoidal(kGrid, 23, 3, 10, 0.05);
    const Trajectory full = run(v0, forcing::ForcingSpec{}, quick_config(nu, 1e-3, 0.2, 100));
    // snapshot at t=0.1 is index 1 (stride 100 of 200 steps)
    REQUIRE(full.snapshot_times.size() == 3);
    REQUIRE(full.snapshot_times[1] == doctest::Approx(0.1));

    // pass the mid snapshot through the physical round trip, as a reload would
    const SpectralField mid = SpectralField::from_physical(full.snapshots[1].to_physical());
    const Trajectory tail = run(mid, forcing::ForcingSpec{}, quick_config(nu, 1e-3, 0.1, 100));
    CHECK(rel_field_error(tail.final_state(), full.final_state()) < 1e-10);
}

TEST_CASE("cfl violation aborts the step") {
    SolverConfig cfg = quick_config(0.01, 5e-2, 0.5);  // dx/(2*dt) < 4 at n=16
    const SpectralField v0 = spectral::taylor_green(kGrid, 8.0);
    CHECK_THROWS_AS(run(v0, forcing::ForcingSpec{}, cfg), CflViolation);
}

TEST_CASE("non-finite coefficients are detected") {
    SolverConfig cfg = quick_config(0.1, 1e-2, 0.1);
    cfg.disable_nonlinearity = true;
    SpectralField v0(kGrid);
    v0.set_mode({1, 0, 0}, {Complex(0, 0), Complex(std::nan(""), 0.0), Complex(0, 0)});
    CHECK_THROWS_AS(run(v0, forcing::ForcingSpec{}, cfg), NonFinite);
}

TEST_CASE("epsilon_nu rejects out-of-range times") {
    const Trajectory traj = run(SpectralField(kGrid), forcing::ForcingSpec{}, quick_config(0.1, 1e-2, 0.1));
    CHECK_THROWS_AS(epsilon_nu(traj, 0.2), OutOfRange);
    CHECK_THROWS_AS(energy_balance_residual(traj, -0.05), OutOfRange);
}

TEST_CASE("hypothesis (H) report") {
    SUBCASE("zero trajectory reports zeros") {
        const Trajectory traj =
            run(SpectralField(kGrid), forcing::ForcingSpec{}, quick_config(0.1, 1e-2, 0.1));
        const HypothesisHReport r = hypothesis_H_report(traj, forcing::ForcingSpec{}, 0.4, 2.0, 0.5);
        CHECK(r.sup_l2 == 0.0);
        CHECK(r.lq_halpha == 0.0);
        CHECK(r.l1sigma_force == 0.0);
    }
    SUBCASE("taylor-green: sup of the L2 norm is the initial norm") {
        const SpectralField v0 = spectral::taylor_green(kGrid);
        const Trajectory traj = run(v0, forcing::ForcingSpec{}, quick_config(0.1, 1e-3, 0.1, 20));
        const HypothesisHReport r = hypothesis_H_report(traj, forcing::ForcingSpec{}, 1.0 / 3.0, 2.0, 0.5);
        CHECK(r.sup_l2 == doctest::Approx(std::sqrt(v0.l2_sq())).epsilon(1e-12));
    }
    SUBCASE("constant single-mode force: L^{1+sigma} norm is the constant L2 norm") {
        forcing::ForcingSpec force;
        force.family = forcing::Family::FixedMode;
        force.k = {1, 0, 0};
        force.axis = 1;
        force.amplitude = 0.25;
        const Trajectory traj = run(SpectralField(kGrid), force, quick_config(0.5, 1e-2, 0.1));
        const HypothesisHReport r = hypothesis_H_report(traj, force, 0.4, 2.0, 0.5);
        CHECK(r.l1sigma_force ==
              doctest::Approx(0.25 * std::sqrt(2.0 * kBoxVolume)).epsilon(1e-10));
    }
}
