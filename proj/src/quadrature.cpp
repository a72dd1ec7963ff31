#include "khmflow/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace khm::stats {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(spectral::kTwoPi / 2.0 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

}  // namespace

SphericalQuadrature SphericalQuadrature::fibonacci(int m) {
    if (m < 1) throw std::invalid_argument("fibonacci: m >= 1 required");
    SphericalQuadrature q;
    q.nodes.reserve(m);
    q.weights.assign(m, 1.0 / m);
    const double golden_angle = spectral::kTwoPi / 2.0 * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / m;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * i;
        q.nodes.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return q;
}

SphericalQuadrature SphericalQuadrature::fibonacci_antipodal(int m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("fibonacci_antipodal: m must be even");
    SphericalQuadrature half = fibonacci(m / 2);
    SphericalQuadrature q;
    q.nodes.reserve(m);
    q.weights.assign(m, 1.0 / m);
    for (const Vec3& n : half.nodes) {
        q.nodes.push_back(n);
        q.nodes.push_back({-n[0], -n[1], -n[2]});
    }
    return q;
}

SphericalQuadrature SphericalQuadrature::gauss_product(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("gauss_product: sizes >= 1");
    std::vector<double> x, w;
    gauss_legendre(n_theta, x, w);
    SphericalQuadrature q;
    q.nodes.reserve(std::size_t(n_theta) * n_phi);
    q.weights.reserve(std::size_t(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        const double z = x[i];
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        // Gauss-Legendre weights sum to 2 = integral of dcos(theta).
        const double wi = w[i] / (2.0 * n_phi);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = spectral::kTwoPi * j / n_phi;
            q.nodes.push_back({r * std::cos(phi), r * std::sin(phi), z});
            q.weights.push_back(wi);
        }
    }
    return q;
}

Vec3 SphericalQuadrature::first_moment() const {
    Vec3 m{0.0, 0.0, 0.0};
    for (int i = 0; i < size(); ++i)
        for (int c = 0; c < 3; ++c) m[c] += weights[i] * nodes[i][c];
    return m;
}

std::array<double, 9> SphericalQuadrature::second_moment() const {
    std::array<double, 9> m{};
    for (int i = 0; i < size(); ++i)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m[3 * a + b] += weights[i] * nodes[i][a] * nodes[i][b];
    return m;
}

}  // namespace khm::stats
