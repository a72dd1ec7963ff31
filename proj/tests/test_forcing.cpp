#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "khmflow/errors.hpp"
#include "khmflow/forcing.hpp"
#include "khmflow/spectral_ops.hpp"

using namespace khm;
using namespace khm::forcing;
using spectral::Complex;
using spectral::GridSpec;
using spectral::kBoxVolume;
using spectral::SpectralField;
using spectral::Vec3;

namespace {
const GridSpec kGrid(16);

ForcingSpec fixed_mode_spec(double amp) {
    ForcingSpec s;
    s.family = Family::FixedMode;
    s.k = {1, 0, 0};
    s.axis = 1;
    s.amplitude = amp;
    return s;
}
}  // namespace

TEST_CASE("zero family evaluates to the zero field") {
    ForcingSpec s;
    CHECK(evaluate(s, 0.3, kGrid).max_coeff_abs() == 0.0);
    CHECK(force_integrability(s, 0.5) == 0.0);
}

TEST_CASE("fixed mode: physical shape, divergence, projection invariance") {
    const ForcingSpec s = fixed_mode_spec(0.25);
    const SpectralField f = evaluate(s, 0.0, kGrid);
    const auto p = f.to_physical();
    double worst = 0.0;
    for (int i = 0; i < kGrid.n; ++i)
        for (int j = 0; j < kGrid.n; ++j)
            for (int k = 0; k < kGrid.n; ++k) {
                const Vec3 x = kGrid.point(i, j, k);
                worst = std::max(worst, std::abs(p.value(1, i, j, k) - 2.0 * 0.25 * std::cos(x[0])));
                worst = std::max(worst, std::abs(p.value(0, i, j, k)));
                worst = std::max(worst, std::abs(p.value(2, i, j, k)));
            }
    CHECK(worst < 1e-13);
    CHECK(spectral::divergence_rel(f) < 1e-14);

    const SpectralField projected = spectral::leray_project(f);
    double diff = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < f.component(c).size(); ++i)
            diff = std::max(diff, std::abs(f.component(c)[i] - projected.component(c)[i]));
    CHECK(diff == 0.0);

    // mean-free
    CHECK(std::abs(f.coeff(0, {0, 0, 0})) == 0.0);
    CHECK(std::abs(f.coeff(1, {0, 0, 0})) == 0.0);
}

TEST_CASE("evaluate is pure: repeated calls bit-identical") {
    const ForcingSpec s = fixed_mode_spec(0.1);
    const SpectralField a = evaluate(s, 0.377, kGrid);
    const SpectralField b = evaluate(s, 0.377, kGrid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.component(c).size(); ++i)
            CHECK(a.component(c)[i] == b.component(c)[i]);
}

TEST_CASE("alternating shear is periodic and divergence-free") {
    ForcingSpec s;
    s.family = Family::AlternatingShear;
    s.k = {1, 0, 0};
    s.axis = 1;
    s.k2 = {0, 1, 0};
    s.axis2 = 2;
    s.amplitude = 0.5;
    s.period = 0.25;
    s.validate();
    for (double t : {0.0, 0.1, 0.2}) {
        const SpectralField a = evaluate(s, t, kGrid);
        const SpectralField b = evaluate(s, t + s.period, kGrid);
        double diff = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < a.component(c).size(); ++i)
                diff = std::max(diff, std::abs(a.component(c)[i] - b.component(c)[i]));
        CHECK(diff < 1e-15);
        CHECK(spectral::divergence_rel(a) < 1e-14);
    }
}

TEST_CASE("closed-form norms match built fields") {
    ForcingSpec s;
    s.family = Family::AlternatingShear;
    s.k = {1, 0, 0};
    s.axis = 1;
    s.k2 = {0, 2, 0};
    s.axis2 = 0;
    s.amplitude = 0.7;
    s.period = 0.4;
    for (double t : {0.0, 0.13, 0.31}) {
        const double closed = norm_l2(s, t);
        const double built = std::sqrt(evaluate(s, t, kGrid).l2_sq());
        CHECK(closed == doctest::Approx(built).epsilon(1e-12));
    }
}

TEST_CASE("force integrability") {
    SUBCASE("constant-norm force returns its amplitude norm") {
        const ForcingSpec s = fixed_mode_spec(0.3);
        const double expected = 0.3 * std::sqrt(2.0 * kBoxVolume);
        CHECK(force_integrability(s, 0.5) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("ramp envelope matches the closed-form power integral") {
        ForcingSpec s = fixed_mode_spec(1.0);
        s.family = Family::TimeRamp;
        s.inner = Family::FixedMode;
        s.ramp_theta = 0.1;
        const double sigma = 0.5;
        const double a = std::sqrt(2.0 * kBoxVolume);
        const double expected =
            a * std::pow(1.0 / (1.0 - s.ramp_theta * (1.0 + sigma)), 1.0 / (1.0 + sigma));
        CHECK(std::abs(force_integrability(s, sigma) - expected) / expected < 1e-4);
    }
    SUBCASE("non-integrable envelope reports infinity") {
        ForcingSpec s = fixed_mode_spec(1.0);
        s.family = Family::TimeRamp;
        s.ramp_theta = 0.8;
        CHECK(std::isinf(force_integrability(s, 0.5)));
    }
}

TEST_CASE("time ramp evaluates to zero at t = 0") {
    ForcingSpec s = fixed_mode_spec(1.0);
    s.family = Family::TimeRamp;
    s.ramp_theta = 0.2;
    CHECK(evaluate(s, 0.0, kGrid).max_coeff_abs() == 0.0);
    CHECK(evaluate(s, 0.5, kGrid).max_coeff_abs() > 0.0);
}

TEST_CASE("validation rejects ill-formed specs") {
    ForcingSpec s = fixed_mode_spec(1.0);
    s.k = {1, 0, 0};
    s.axis = 0;  // k not orthogonal to component
    CHECK_THROWS_AS(s.validate(), ConfigError);

    ForcingSpec z = fixed_mode_spec(1.0);
    z.k = {0, 0, 0};
    CHECK_THROWS_AS(z.validate(), ConfigError);

    ForcingSpec pair;
    pair.family = Family::AlternatingShear;
    pair.k = {1, 0, 0};
    pair.axis = 1;
    pair.k2 = {-1, 0, 0};
    pair.axis2 = 1;  // same real mode twice
    pair.amplitude = 1.0;
    CHECK_THROWS_AS(pair.validate(), ConfigError);
}
