#include "khmflow/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace khm::spectral {

SpectralField leray_project(const SpectralField& f) {
    SpectralField out = f;
    const GridSpec& g = f.grid();
    const int n = g.n;
    for (int i = 0; i < n; ++i) {
        const int ki = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int kj = g.wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const int kk = g.wavenumber(k);
                const int k2 = ki * ki + kj * kj + kk * kk;
                if (k2 == 0) continue;
                const std::int64_t p = g.flat(i, j, k);
                const Complex kdotv = double(ki) * out.component(0)[p] +
                                      double(kj) * out.component(1)[p] +
                                      double(kk) * out.component(2)[p];
                const Complex scale = kdotv / double(k2);
                out.component(0)[p] -= double(ki) * scale;
                out.component(1)[p] -= double(kj) * scale;
                out.component(2)[p] -= double(kk) * scale;
            }
        }
    }
    return out;
}

SpectralField shift(const SpectralField& v, const Vec3& h) {
    SpectralField out = v;
    const GridSpec& g = v.grid();
    const int n = g.n;
    // Per-axis phase tables keep the cost at O(n) exp evaluations.
    std::vector<Complex> px(n), py(n), pz(n);
    for (int i = 0; i < n; ++i) {
        const double k = g.wavenumber(i);
        px[i] = std::polar(1.0, k * h[0]);
        py[i] = std::polar(1.0, k * h[1]);
        pz[i] = std::polar(1.0, k * h[2]);
    }
    for (int c = 0; c < 3; ++c) {
        auto& a = out.component(c);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Complex pij = px[i] * py[j];
                const std::int64_t base = g.flat(i, j, 0);
                for (int k = 0; k < n; ++k) a[base + k] *= pij * pz[k];
            }
    }
    return out;
}

SpectralTensor gradient(const SpectralField& v) {
    const GridSpec& g = v.grid();
    SpectralTensor t;
    t.grid = g;
    for (auto& comp : t.comps) comp.assign(g.points(), Complex(0.0, 0.0));
    const int n = g.n;
    for (int c = 0; c < 3; ++c) {
        const auto& a = v.component(c);
        for (int i = 0; i < n; ++i) {
            const int ki = g.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int kj = g.wavenumber(j);
                for (int k = 0; k < n; ++k) {
                    const int kk = g.wavenumber(k);
                    const std::int64_t p = g.flat(i, j, k);
                    const Complex ia = Complex(0.0, 1.0) * a[p];
                    t.entry(0, c)[p] = double(ki) * ia;
                    t.entry(1, c)[p] = double(kj) * ia;
                    t.entry(2, c)[p] = double(kk) * ia;
                }
            }
        }
    }
    return t;
}

SpectralField laplacian(const SpectralField& v) {
    SpectralField out = v;
    const GridSpec& g = v.grid();
    const int n = g.n;
    for (int c = 0; c < 3; ++c) {
        auto& a = out.component(c);
        for (int i = 0; i < n; ++i) {
            const int ki = g.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int kj = g.wavenumber(j);
                for (int k = 0; k < n; ++k) {
                    const int kk = g.wavenumber(k);
                    a[g.flat(i, j, k)] *= -double(ki * ki + kj * kj + kk * kk);
                }
            }
        }
    }
    return out;
}

double divergence_rel(const SpectralField& v) {
    const GridSpec& g = v.grid();
    const int n = g.n;
    double worst = 0.0;
    double maxc = v.max_coeff_abs();
    if (maxc == 0.0) return 0.0;
    for (int i = 0; i < n; ++i) {
        const int ki = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int kj = g.wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const int kk = g.wavenumber(k);
                const std::int64_t p = g.flat(i, j, k);
                const Complex div = double(ki) * v.component(0)[p] + double(kj) * v.component(1)[p] +
                                    double(kk) * v.component(2)[p];
                worst = std::max(worst, std::abs(div));
            }
        }
    }
    return worst / maxc;
}

NormReport norms(const SpectralField& v, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("norms: alpha must be in (0,1)");
    NormReport r;
    r.l2_sq = v.l2_sq();
    r.h1_sq = v.h1_sq();

    const GridSpec& g = v.grid();
    const int n = g.n;
    double halpha_sq = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = v.component(c);
        for (int i = 0; i < n; ++i) {
            const int ki = g.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int kj = g.wavenumber(j);
                for (int k = 0; k < n; ++k) {
                    const int kk = g.wavenumber(k);
                    const double k2 = double(ki * ki + kj * kj + kk * kk);
                    halpha_sq += std::pow(1.0 + k2, alpha) * std::norm(a[g.flat(i, j, k)]);
                }
            }
        }
    }
    r.h_alpha = std::sqrt(halpha_sq * kBoxVolume);

    // Dyadic axis offsets h = dx * 2^m, m = 0..log2(n/4), via circular rolls.
    const PhysicalField p = v.to_physical();
    double best = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        for (int step = 1; step <= n / 4; step *= 2) {
            double sup = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        int is = i, js = j, ks = k;
                        if (axis == 0) is = (i + step) % n;
                        if (axis == 1) js = (j + step) % n;
                        if (axis == 2) ks = (k + step) % n;
                        double d2 = 0.0;
                        for (int c = 0; c < 3; ++c) {
                            const double d = p.value(c, is, js, ks) - p.value(c, i, j, k);
                            d2 += d * d;
                        }
                        sup = std::max(sup, d2);
                    }
            const double hlen = g.dx() * step;
            best = std::max(best, std::sqrt(sup) / std::pow(hlen, alpha));
        }
    }
    r.holder_alpha = best;
    return r;
}

SpectralField taylor_green(const GridSpec& grid, double amplitude) {
    // cos x sin y = (e^{i(x+y)} - e^{i(x-y)} + c.c.) / (4i)-type combination;
    // assembled directly from the four (+-1,+-1,0) modes.
    SpectralField f(grid);
    const Complex quarter(amplitude * 0.25, 0.0);
    const Complex iq = Complex(0.0, 1.0) * quarter;
    // cos x sin y: modes (1,1,0): -i/4, (1,-1,0): +i/4 (+ conjugates).
    f.set_mode({1, 1, 0}, {-iq, iq, Complex(0, 0)});
    f.set_mode({1, -1, 0}, {iq, iq, Complex(0, 0)});
    return f;
}

SpectralField single_mode(const GridSpec& grid, const Vec3i& k, int axis, Complex amplitude) {
    if (k[axis] != 0) throw std::invalid_argument("single_mode: k must be orthogonal to the component");
    if (!grid.in_band(k)) throw std::invalid_argument("single_mode: k outside the dealiased band");
    SpectralField f(grid);
    std::array<Complex, 3> a{Complex(0, 0), Complex(0, 0), Complex(0, 0)};
    a[axis] = amplitude;
    f.set_mode(k, a);
    return f;
}

SpectralField zero_field(const GridSpec& grid) { return SpectralField(grid); }

}  // namespace khm::spectral
