#pragma once

// Test-only brute-force evaluators: every statistic is recomputed by direct
// real-space summation over grid points, with values at shifted points
// obtained by explicit Fourier synthesis over the nonzero modes.  These stay
// independent of the FFT/phase-shift production paths they check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "khmflow/quadrature.hpp"
#include "khmflow/spectral_ops.hpp"

namespace oracle {

using khm::spectral::Complex;
using khm::spectral::GridSpec;
using khm::spectral::SpectralField;
using khm::spectral::Vec3;
using khm::spectral::Vec3i;
using khm::stats::SphericalQuadrature;

using Modes = std::vector<SpectralField::Mode>;

inline Vec3 eval_field(const Modes& modes, const Vec3& x) {
    Complex acc[3] = {0.0, 0.0, 0.0};
    for (const auto& m : modes) {
        const double phase = m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2];
        const Complex e(std::cos(phase), std::sin(phase));
        for (int c = 0; c < 3; ++c) acc[c] += m.a[c] * e;
    }
    return {acc[0].real(), acc[1].real(), acc[2].real()};
}

// grad v at x: entry (j,l) = d_j v_l
inline std::array<double, 9> eval_gradient(const Modes& modes, const Vec3& x) {
    Complex acc[9] = {};
    for (const auto& m : modes) {
        const double phase = m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2];
        const Complex ie = Complex(0.0, 1.0) * Complex(std::cos(phase), std::sin(phase));
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) acc[3 * j + l] += double(m.k[j]) * ie * m.a[l];
    }
    std::array<double, 9> out;
    for (int i = 0; i < 9; ++i) out[i] = acc[i].real();
    return out;
}

// One (ell, nhat) leg of each statistic by a double loop over grid points.
struct NodeStats {
    double s_zero = 0.0, s_par = 0.0, s3 = 0.0, sp = 0.0;
    double j = 0.0, g = 0.0, h = 0.0, fbar = 0.0, ftilde = 0.0;
};

inline NodeStats node_stats(const SpectralField& v, const SpectralField* force, double ell,
                            const Vec3& nhat, double p) {
    const GridSpec& grid = v.grid();
    const Modes modes = v.nonzero_modes();
    Modes fmodes;
    if (force) fmodes = force->nonzero_modes();
    const int n = grid.n;
    NodeStats out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Vec3 x = grid.point(i, j, k);
                const Vec3 xs{x[0] + ell * nhat[0], x[1] + ell * nhat[1], x[2] + ell * nhat[2]};
                const Vec3 a = eval_field(modes, x);
                const Vec3 b = eval_field(modes, xs);
                const double d0 = b[0] - a[0], d1 = b[1] - a[1], d2 = b[2] - a[2];
                const double along = d0 * nhat[0] + d1 * nhat[1] + d2 * nhat[2];
                const double mag2 = d0 * d0 + d1 * d1 + d2 * d2;
                out.s_zero += mag2 * along;
                out.s_par += along * along * along;
                out.s3 += std::pow(mag2, 1.5);
                out.sp += std::pow(mag2, 0.5 * p);
                out.j += a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
                const double an = a[0] * nhat[0] + a[1] * nhat[1] + a[2] * nhat[2];
                const double bn = b[0] * nhat[0] + b[1] * nhat[1] + b[2] * nhat[2];
                out.g += an * bn;
                const auto gb = eval_gradient(modes, xs);
                double nng = 0.0;
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) nng += nhat[r] * nhat[c] * gb[3 * r + c];
                out.h += an * nng;
                if (force) {
                    const Vec3 f = eval_field(fmodes, x);
                    out.fbar += f[0] * b[0] + f[1] * b[1] + f[2] * b[2];
                    const double fn = f[0] * nhat[0] + f[1] * nhat[1] + f[2] * nhat[2];
                    out.ftilde += fn * bn;
                }
            }
    const double cell = khm::spectral::kBoxVolume / double(grid.points());
    out.s_zero *= cell;
    out.s_par *= cell;
    out.s3 *= cell;
    out.sp *= cell;
    out.j *= cell;
    out.g *= cell;
    out.h *= cell;
    out.fbar *= cell;
    out.ftilde *= cell;
    return out;
}

inline NodeStats sphere_average(const SpectralField& v, const SpectralField* force, double ell,
                                const SphericalQuadrature& quad, double p) {
    NodeStats avg;
    for (int m = 0; m < quad.size(); ++m) {
        const NodeStats one = node_stats(v, force, ell, quad.nodes[m], p);
        const double w = quad.weights[m];
        avg.s_zero += w * one.s_zero;
        avg.s_par += w * one.s_par;
        avg.s3 += w * one.s3;
        avg.sp += w * one.sp;
        avg.j += w * one.j;
        avg.g += w * one.g;
        avg.h += w * one.h;
        avg.fbar += w * one.fbar;
        avg.ftilde += w * one.ftilde;
    }
    return avg;
}

// Deterministic random divergence-free band-limited field.
inline SpectralField random_solenoidal(const GridSpec& grid, unsigned seed, int kmax, int n_modes,
                                       double amplitude = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ki(-kmax, kmax);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    SpectralField f(grid);
    int placed = 0;
    while (placed < n_modes) {
        const Vec3i k{ki(rng), ki(rng), ki(rng)};
        if (k[0] == 0 && k[1] == 0 && k[2] == 0) continue;
        std::array<Complex, 3> a;
        for (int c = 0; c < 3; ++c) a[c] = amplitude * Complex(amp(rng), amp(rng));
        f.set_mode(k, a);
        ++placed;
    }
    return khm::spectral::leray_project(f);
}

}  // namespace oracle
