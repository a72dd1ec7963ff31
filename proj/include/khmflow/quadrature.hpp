#pragma once

#include <array>
#include <vector>

#include "khmflow/grid.hpp"

namespace khm::stats {

using spectral::Vec3;

// Unit-sphere quadrature with normalized weights (sum w = 1), so node
// averages approximate (1/4pi) integral over S^2 directly.
//
// Kinds:
//   fibonacci           golden-angle spiral, equal weights; the default set.
//   fibonacci_antipodal antipodally symmetrized spiral; odd moments vanish
//                       exactly, used by isotropy-sensitive diagnostics.
//   gauss_product       Gauss-Legendre x uniform azimuth product rule;
//                       integrates spherical polynomials up to degree
//                       min(2*n_theta - 1, n_phi - 1) exactly, hence has an
//                       exactly isotropic second moment.
struct SphericalQuadrature {
    std::vector<Vec3> nodes;
    std::vector<double> weights;

    static SphericalQuadrature fibonacci(int m = 64);
    static SphericalQuadrature fibonacci_antipodal(int m = 64);
    static SphericalQuadrature gauss_product(int n_theta, int n_phi);

    int size() const { return static_cast<int>(nodes.size()); }
    Vec3 first_moment() const;
    std::array<double, 9> second_moment() const;
};

}  // namespace khm::stats
