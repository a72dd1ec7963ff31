#pragma once

#include <array>
#include <complex>
#include <vector>

#include "khmflow/grid.hpp"

namespace khm::spectral {

using Complex = std::complex<double>;
using CoeffArray = std::vector<Complex>;

class SpectralField;

// Real-valued velocity field sampled on the collocation grid.  Component
// major storage, index order (i,j,k) with k fastest, x = 2pi*(i,j,k)/n.
class PhysicalField {
  public:
    PhysicalField() = default;
    explicit PhysicalField(const GridSpec& grid)
        : grid_(grid), values_{std::vector<double>(grid.points()), std::vector<double>(grid.points()),
                               std::vector<double>(grid.points())} {}

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& component(int c) const { return values_[c]; }
    std::vector<double>& component(int c) { return values_[c]; }

    double value(int c, int i, int j, int k) const { return values_[c][grid_.flat(i, j, k)]; }
    double& value(int c, int i, int j, int k) { return values_[c][grid_.flat(i, j, k)]; }

    double max_abs() const;
    // Grid quadrature of |v|^2 over the box: (2pi/n)^3 * sum |v|^2.
    double l2_sq_quadrature() const;

  private:
    GridSpec grid_;
    std::array<std::vector<double>, 3> values_;
};

// Band-limited velocity field as Fourier coefficients c(k) with
// v(x) = sum_k c(k) exp(i k.x).  Hermitian symmetry c(-k) = conj(c(k)) is
// enforced on construction from physical data and by set_mode, so the
// represented field is real.  The mean mode c(0) is stored and may be
// nonzero.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid)
        : grid_(grid), coeffs_{CoeffArray(grid.points()), CoeffArray(grid.points()), CoeffArray(grid.points())} {}

    static SpectralField from_physical(const PhysicalField& p);
    PhysicalField to_physical() const;
    void to_physical_component(int c, std::vector<Complex>& scratch, std::vector<double>& out) const;

    const GridSpec& grid() const { return grid_; }
    const CoeffArray& component(int c) const { return coeffs_[c]; }
    CoeffArray& component(int c) { return coeffs_[c]; }

    Complex coeff(int c, const Vec3i& k) const {
        return coeffs_[c][grid_.flat(grid_.index_of(k[0]), grid_.index_of(k[1]), grid_.index_of(k[2]))];
    }

    // Sets c(k) = a and c(-k) = conj(a); for k = 0 the imaginary part must
    // vanish.
    void set_mode(const Vec3i& k, const std::array<Complex, 3>& a);

    // Exact Hermitian symmetrization: c(k) <- (c(k) + conj(c(-k)))/2.
    void symmetrize();
    double hermitian_defect() const;

    void zero_outside_band();
    bool all_finite() const;
    double max_coeff_abs() const;

    // Parseval: ||v||_{L2}^2 = (2pi)^3 sum_k |c(k)|^2.
    double l2_sq() const;
    // ||grad v||_{L2}^2 = (2pi)^3 sum_k |k|^2 |c(k)|^2.
    double h1_sq() const;
    // <u,v> = (2pi)^3 Re sum_k conj(u(k)).v(k).
    static double inner(const SpectralField& u, const SpectralField& v);

    // Modes with |c(k)| > rel_tol * max|c| as (k, amplitude) pairs; the basis
    // of the sparse statistics routes.
    struct Mode {
        Vec3i k;
        std::array<Complex, 3> a;
    };
    std::vector<Mode> nonzero_modes(double rel_tol = 1e-14) const;

  private:
    GridSpec grid_;
    std::array<CoeffArray, 3> coeffs_;
};

}  // namespace khm::spectral
