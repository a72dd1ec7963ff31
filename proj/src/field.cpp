#include "khmflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "khmflow/fft.hpp"

namespace khm::spectral {

double PhysicalField::max_abs() const {
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (double v : values_[c]) m = std::max(m, std::abs(v));
    return m;
}

double PhysicalField::l2_sq_quadrature() const {
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
        for (double v : values_[c]) s += v * v;
    const double cell = kBoxVolume / double(grid_.points());
    return s * cell;
}

SpectralField SpectralField::from_physical(const PhysicalField& p) {
    SpectralField f(p.grid());
    const int n = p.grid().n;
    const std::int64_t count = p.grid().points();
    std::vector<Complex> in(count), out(count);
    for (int c = 0; c < 3; ++c) {
        const auto& vals = p.component(c);
        for (std::int64_t i = 0; i < count; ++i) in[i] = Complex(vals[i], 0.0);
        fft_forward_scaled(n, in.data(), out.data());
        f.coeffs_[c] = out;
    }
    f.symmetrize();
    return f;
}

PhysicalField SpectralField::to_physical() const {
    PhysicalField p(grid_);
    std::vector<Complex> scratch;
    for (int c = 0; c < 3; ++c) to_physical_component(c, scratch, p.component(c));
    return p;
}

void SpectralField::to_physical_component(int c, std::vector<Complex>& scratch,
                                          std::vector<double>& out) const {
    const std::int64_t count = grid_.points();
    scratch.resize(count);
    fft_backward(grid_.n, coeffs_[c].data(), scratch.data());
    out.resize(count);
    for (std::int64_t i = 0; i < count; ++i) out[i] = scratch[i].real();
}

void SpectralField::set_mode(const Vec3i& k, const std::array<Complex, 3>& a) {
    const bool is_zero = (k[0] == 0 && k[1] == 0 && k[2] == 0);
    for (int c = 0; c < 3; ++c) {
        if (is_zero && std::abs(a[c].imag()) > 0.0)
            throw std::invalid_argument("set_mode: mean mode must be real");
        const std::int64_t ip = grid_.flat(grid_.index_of(k[0]), grid_.index_of(k[1]), grid_.index_of(k[2]));
        coeffs_[c][ip] = a[c];
        if (!is_zero) {
            const std::int64_t im =
                grid_.flat(grid_.index_of(-k[0]), grid_.index_of(-k[1]), grid_.index_of(-k[2]));
            coeffs_[c][im] = std::conj(a[c]);
        }
    }
}

void SpectralField::symmetrize() {
    const int n = grid_.n;
    for (int c = 0; c < 3; ++c) {
        auto& a = coeffs_[c];
        for (int i = 0; i < n; ++i) {
            const int mi = (n - i) % n;
            for (int j = 0; j < n; ++j) {
                const int mj = (n - j) % n;
                for (int k = 0; k < n; ++k) {
                    const int mk = (n - k) % n;
                    const std::int64_t p = grid_.flat(i, j, k);
                    const std::int64_t q = grid_.flat(mi, mj, mk);
                    if (q < p) continue;
                    const Complex avg = 0.5 * (a[p] + std::conj(a[q]));
                    a[p] = avg;
                    a[q] = std::conj(avg);
                }
            }
        }
    }
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n;
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = coeffs_[c];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const std::int64_t p = grid_.flat(i, j, k);
                    const std::int64_t q = grid_.flat((n - i) % n, (n - j) % n, (n - k) % n);
                    worst = std::max(worst, std::abs(a[p] - std::conj(a[q])));
                }
    }
    return worst;
}

void SpectralField::zero_outside_band() {
    const int n = grid_.n;
    for (int c = 0; c < 3; ++c) {
        auto& a = coeffs_[c];
        for (int i = 0; i < n; ++i) {
            const int ki = grid_.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int kj = grid_.wavenumber(j);
                for (int k = 0; k < n; ++k) {
                    const int kk = grid_.wavenumber(k);
                    if (!grid_.in_band({ki, kj, kk})) a[grid_.flat(i, j, k)] = Complex(0.0, 0.0);
                }
            }
        }
    }
}

bool SpectralField::all_finite() const {
    for (int c = 0; c < 3; ++c)
        for (const Complex& z : coeffs_[c])
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double SpectralField::max_coeff_abs() const {
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const Complex& z : coeffs_[c]) m = std::max(m, std::abs(z));
    return m;
}

double SpectralField::l2_sq() const {
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const Complex& z : coeffs_[c]) s += std::norm(z);
    return s * kBoxVolume;
}

double SpectralField::h1_sq() const {
    const int n = grid_.n;
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = coeffs_[c];
        for (int i = 0; i < n; ++i) {
            const int ki = grid_.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int kj = grid_.wavenumber(j);
                for (int k = 0; k < n; ++k) {
                    const int kk = grid_.wavenumber(k);
                    s += double(ki * ki + kj * kj + kk * kk) * std::norm(a[grid_.flat(i, j, k)]);
                }
            }
        }
    }
    return s * kBoxVolume;
}

double SpectralField::inner(const SpectralField& u, const SpectralField& v) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = u.coeffs_[c];
        const auto& b = v.coeffs_[c];
        for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
    }
    return s * kBoxVolume;
}

std::vector<SpectralField::Mode> SpectralField::nonzero_modes(double rel_tol) const {
    const double cutoff = rel_tol * max_coeff_abs();
    std::vector<Mode> modes;
    const int n = grid_.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::int64_t p = grid_.flat(i, j, k);
                const Complex a0 = coeffs_[0][p], a1 = coeffs_[1][p], a2 = coeffs_[2][p];
                if (std::abs(a0) > cutoff || std::abs(a1) > cutoff || std::abs(a2) > cutoff)
                    modes.push_back({{grid_.wavenumber(i), grid_.wavenumber(j), grid_.wavenumber(k)},
                                     {a0, a1, a2}});
            }
    return modes;
}

}  // namespace khm::spectral
