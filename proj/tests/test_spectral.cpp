#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "khmflow/spectral_ops.hpp"
#include "oracles.hpp"

using namespace khm::spectral;

namespace {
const GridSpec kGrid(16);

double rel_diff(const SpectralField& a, const SpectralField& b) {
    double num = 0.0, den = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.component(c).size(); ++i) {
            num += std::norm(a.component(c)[i] - b.component(c)[i]);
            den += std::norm(a.component(c)[i]);
        }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}
}  // namespace

TEST_CASE("parseval: grid quadrature matches spectral sum") {
    const SpectralField v = oracle::random_solenoidal(kGrid, 7, 4, 12);
    const double spectral = v.l2_sq();
    const double physical = v.to_physical().l2_sq_quadrature();
    CHECK(std::abs(spectral - physical) <= 1e-10 * spectral);
}

TEST_CASE("round trip spectral -> physical -> spectral") {
    const SpectralField v = oracle::random_solenoidal(kGrid, 8, 5, 20);
    const SpectralField back = SpectralField::from_physical(v.to_physical());
    CHECK(rel_diff(v, back) < 1e-12);
    CHECK(back.hermitian_defect() == 0.0);
}

TEST_CASE("leray annihilates gradient modes") {
    SpectralField f(kGrid);
    f.set_mode({1, 0, 0}, {Complex(1.0, 0.0), Complex(0, 0), Complex(0, 0)});  // c(k) parallel to k
    const SpectralField p = leray_project(f);
    CHECK(p.max_coeff_abs() < 1e-15);
}

TEST_CASE("leray keeps solenoidal modes") {
    const SpectralField f = single_mode(kGrid, {1, 0, 0}, 1, Complex(2.0, 0.5));
    const SpectralField p = leray_project(f);
    CHECK(rel_diff(f, p) < 1e-15);
}

TEST_CASE("leray on the (1,2,2) mode matches the hand projection") {
    SpectralField f(kGrid);
    f.set_mode({1, 2, 2}, {Complex(1.0, 0.0), Complex(0, 0), Complex(0, 0)});
    const SpectralField p = leray_project(f);
    const Complex c0 = p.coeff(0, {1, 2, 2});
    const Complex c1 = p.coeff(1, {1, 2, 2});
    const Complex c2 = p.coeff(2, {1, 2, 2});
    CHECK(c0.real() == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(c1.real() == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
    CHECK(c2.real() == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("leray is idempotent and non-expansive; projected fields are solenoidal") {
    const SpectralField raw = [&] {
        SpectralField f(kGrid);
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int m = 0; m < 10; ++m)
            f.set_mode({1 + m % 3, m % 5 - 2, (m * 7) % 5 - 2},
                       {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))});
        return f;
    }();
    const SpectralField once = leray_project(raw);
    const SpectralField twice = leray_project(once);
    CHECK(rel_diff(once, twice) < 1e-14);
    CHECK(once.l2_sq() <= raw.l2_sq() * (1.0 + 1e-14));
    CHECK(divergence_rel(once) < 1e-12);
}

TEST_CASE("shift identities") {
    const SpectralField v = oracle::random_solenoidal(kGrid, 9, 4, 10);

    SUBCASE("zero shift") {
        CHECK(rel_diff(v, shift(v, {0.0, 0.0, 0.0})) == 0.0);
    }
    SUBCASE("full-period shift") {
        CHECK(rel_diff(v, shift(v, {kTwoPi, 0.0, 0.0})) < 1e-12);
    }
    SUBCASE("grid shift equals circular roll") {
        const PhysicalField rolled = shift(v, {kGrid.dx(), 0.0, 0.0}).to_physical();
        const PhysicalField base = v.to_physical();
        double worst = 0.0;
        for (int i = 0; i < kGrid.n; ++i)
            for (int j = 0; j < kGrid.n; ++j)
                for (int k = 0; k < kGrid.n; ++k)
                    for (int c = 0; c < 3; ++c)
                        worst = std::max(worst, std::abs(rolled.value(c, i, j, k) -
                                                         base.value(c, (i + 1) % kGrid.n, j, k)));
        CHECK(worst < 1e-12);
    }
    SUBCASE("round trip and isometry") {
        const Vec3 h{0.3, -1.2, 0.77};
        const SpectralField s = shift(v, h);
        CHECK(std::abs(s.l2_sq() - v.l2_sq()) < 1e-12 * v.l2_sq());
        const SpectralField back = shift(s, {-h[0], -h[1], -h[2]});
        CHECK(rel_diff(v, back) < 1e-12);
    }
    SUBCASE("single mode translates analytically") {
        const SpectralField m = single_mode(kGrid, {2, 1, 0}, 2, Complex(0.7, -0.3));
        const Vec3 h{0.4, 0.9, 0.0};
        const SpectralField s = shift(m, h);
        const Complex expected = m.coeff(2, {2, 1, 0}) * std::polar(1.0, 2 * h[0] + 1 * h[1]);
        CHECK(std::abs(s.coeff(2, {2, 1, 0}) - expected) < 1e-14);
    }
}

TEST_CASE("gradient and laplacian") {
    SUBCASE("constant field has zero gradient") {
        SpectralField f(kGrid);
        f.set_mode({0, 0, 0}, {Complex(3.0, 0.0), Complex(-1.0, 0.0), Complex(0.5, 0.0)});
        const SpectralTensor g = gradient(f);
        double worst = 0.0;
        for (const auto& comp : g.comps)
            for (const Complex& z : comp) worst = std::max(worst, std::abs(z));
        CHECK(worst == 0.0);
    }
    SUBCASE("d/dx of cos x sin y is -sin x sin y") {
        const SpectralField tg = taylor_green(kGrid);
        const SpectralTensor g = gradient(tg);
        SpectralField dx1(kGrid);
        dx1.component(0) = g.entry(0, 0);  // d_x v_1
        const PhysicalField p = dx1.to_physical();
        double worst = 0.0;
        for (int i = 0; i < kGrid.n; ++i)
            for (int j = 0; j < kGrid.n; ++j)
                for (int k = 0; k < kGrid.n; ++k) {
                    const Vec3 x = kGrid.point(i, j, k);
                    worst = std::max(worst,
                                     std::abs(p.value(0, i, j, k) + std::sin(x[0]) * std::sin(x[1])));
                }
        CHECK(worst < 1e-12);
    }
    SUBCASE("laplacian eigenvalue on a single mode") {
        const SpectralField m = single_mode(kGrid, {1, 1, 0}, 2, Complex(1.0, 0.0));
        const SpectralField lap = laplacian(m);
        CHECK(std::abs(lap.coeff(2, {1, 1, 0}) - Complex(-2.0, 0.0)) < 1e-15);
    }
}

TEST_CASE("norms") {
    SUBCASE("zero field") {
        const NormReport r = norms(SpectralField(kGrid), 0.4);
        CHECK(r.l2_sq == 0.0);
        CHECK(r.h1_sq == 0.0);
        CHECK(r.h_alpha == 0.0);
        CHECK(r.holder_alpha == 0.0);
    }
    SUBCASE("taylor-green closed forms") {
        const NormReport r = norms(taylor_green(kGrid), 0.5);
        CHECK(r.l2_sq == doctest::Approx(kBoxVolume / 2.0).epsilon(1e-12));
        CHECK(r.h1_sq == doctest::Approx(kBoxVolume).epsilon(1e-12));
    }
    SUBCASE("single mode H^alpha weight") {
        const double alpha = 0.37;
        const SpectralField m = single_mode(kGrid, {1, 1, 0}, 2, Complex(0.8, 0.0));
        const NormReport r = norms(m, alpha);
        CHECK(r.h_alpha ==
              doctest::Approx(std::pow(3.0, alpha / 2.0) * std::sqrt(m.l2_sq())).epsilon(1e-12));
    }
    SUBCASE("holder estimate scales linearly with amplitude") {
        const NormReport r1 = norms(single_mode(kGrid, {1, 0, 0}, 1, Complex(1.0, 0.0)), 0.3);
        const NormReport r2 = norms(single_mode(kGrid, {1, 0, 0}, 1, Complex(2.0, 0.0)), 0.3);
        CHECK(r1.holder_alpha > 0.0);
        CHECK(r2.holder_alpha == doctest::Approx(2.0 * r1.holder_alpha).epsilon(1e-12));
    }
    SUBCASE("alpha outside (0,1) is rejected") {
        CHECK_THROWS_AS(norms(SpectralField(kGrid), 1.5), std::invalid_argument);
    }
}
