#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "khmflow/quadrature.hpp"

using khm::stats::SphericalQuadrature;

namespace {
double weight_sum(const SphericalQuadrature& q) {
    double s = 0.0;
    for (double w : q.weights) s += w;
    return s;
}
double node_norm_defect(const SphericalQuadrature& q) {
    double worst = 0.0;
    for (const auto& n : q.nodes)
        worst = std::max(worst, std::abs(std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) - 1.0));
    return worst;
}
double avg(const SphericalQuadrature& q, double (*f)(const khm::spectral::Vec3&)) {
    double s = 0.0;
    for (int i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
    return s;
}
}  // namespace

TEST_CASE("all quadratures: unit nodes, weights sum to one, constants exact") {
    for (const SphericalQuadrature& q :
         {SphericalQuadrature::fibonacci(64), SphericalQuadrature::fibonacci_antipodal(64),
          SphericalQuadrature::gauss_product(8, 16)}) {
        CHECK(node_norm_defect(q) < 1e-12);
        CHECK(std::abs(weight_sum(q) - 1.0) < 1e-13);
    }
}

TEST_CASE("fibonacci default: small first moment") {
    const auto m = SphericalQuadrature::fibonacci(64).first_moment();
    CHECK(std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) <= 1e-2);
}

TEST_CASE("antipodal symmetrization kills odd moments") {
    const auto m = SphericalQuadrature::fibonacci_antipodal(64).first_moment();
    CHECK(std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) < 1e-15);
}

TEST_CASE("gauss product: exactly isotropic second moment") {
    const auto s = SphericalQuadrature::gauss_product(8, 16).second_moment();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const double expected = a == b ? 1.0 / 3.0 : 0.0;
            CHECK(std::abs(s[3 * a + b] - expected) < 1e-14);
        }
}

TEST_CASE("gauss product integrates low-degree polynomials exactly") {
    const SphericalQuadrature q = SphericalQuadrature::gauss_product(4, 8);
    CHECK(std::abs(avg(q, +[](const khm::spectral::Vec3& n) { return n[0] * n[0] * n[1] * n[1]; }) -
                   1.0 / 15.0) < 1e-14);
    CHECK(std::abs(avg(q, +[](const khm::spectral::Vec3& n) { return n[2] * n[2] * n[2] * n[2]; }) -
                   1.0 / 5.0) < 1e-14);
    CHECK(std::abs(avg(q, +[](const khm::spectral::Vec3& n) { return n[0] * n[1] * n[2]; })) < 1e-15);
}

TEST_CASE("fibonacci second moment is close to isotropic but not exact") {
    const auto s = SphericalQuadrature::fibonacci(64).second_moment();
    double defect = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            defect = std::max(defect, std::abs(s[3 * a + b] - (a == b ? 1.0 / 3.0 : 0.0)));
    CHECK(defect < 5e-2);
    CHECK(defect > 1e-10);  // the default set is not a design rule
}
