#pragma once

#include <array>
#include <memory>
#include <unordered_map>
#include <vector>

#include "khmflow/field.hpp"
#include "khmflow/quadrature.hpp"
#include "khmflow/spectral_ops.hpp"

namespace khm::stats {

using spectral::Complex;
using spectral::PhysicalField;
using spectral::SpectralField;
using spectral::Vec3;
using spectral::Vec3i;

using Mat3 = std::array<double, 9>;  // row-major 3x3

// All spherical averages below are normalized (weights sum to 1); the
// paper-side 4pi factors are reinstated only inside the law formulas.
struct SphericalAverages {
    double j_val;    // avg <v, T_{l n} v>
    double g_val;    // avg int n (x) n : v (x) T_{l n} v
    double h_val;    // avg int (n.v) (n (x) n : T_{l n} grad v)
    double fbar;     // avg <f, T_{l n} v>
    double ftilde;   // avg int n (x) n : f (x) T_{l n} v
};

struct ViscousCorrection {
    double value;        // 4 nu d_l gammabar(l) / l, finite at l = 0
    double bound_shape;  // nu^{1/2} l^{alpha q / 2 - 1}
};

// (t, l) evaluation of every two-point statistic; visc carries the
// 4 nu d_l gammabar / l integrand.  gamma_bar equals j_val under the
// normalized convention and is kept for the export schema.
struct StructureRecord {
    double t = 0.0;
    double ell = 0.0;
    double s_par = 0.0;
    double s_zero = 0.0;
    double s3 = 0.0;
    double j_val = 0.0;
    double g_val = 0.0;
    double h_val = 0.0;
    double fbar = 0.0;
    double ftilde = 0.0;
    double gamma_bar = 0.0;
    double visc = 0.0;
};

// Per-field evaluation engine.  Cubic statistics run through one of two
// exact routes: grid quadrature of FFT-shifted fields, or a direct mode-sum
// convolution when the field is sparse enough (auto-selected, both exposed
// for cross-checks).  Quadratic correlators are always spectral mode sums.
// Holds non-owning references; keep the fields alive while in use.  One
// instance per thread.
class TwoPointKernel {
  public:
    explicit TwoPointKernel(const SpectralField& v, const SpectralField* force = nullptr);
    ~TwoPointKernel();
    TwoPointKernel(const TwoPointKernel&) = delete;
    TwoPointKernel& operator=(const TwoPointKernel&) = delete;

    struct Cubic {
        double s_zero;
        double s_par;
    };
    Cubic cubic(double ell, const Vec3& nhat) const;
    Cubic cubic_sparse(double ell, const Vec3& nhat) const;
    Cubic cubic_fft(double ell, const Vec3& nhat) const;
    bool sparse_route() const { return use_sparse_; }

    double abs_moment(double ell, const Vec3& nhat, double p) const;  // int |delta v|^p dx
    Mat3 d_matrix(const Vec3& h, int k_index) const;

    struct Quadratic {
        double j, g, h_grad, fbar, ftilde;
        double djdl_over_l;  // d_l <v,T_{l n}v> / l, finite at l = 0
    };
    Quadratic quadratic(double ell, const Vec3& nhat) const;

    Mat3 gamma(const Vec3& h) const;  // int v(x) (x) v(x+h) dx

    const SpectralField& field() const { return *v_; }

  private:
    struct Lookup;
    void ensure_physical() const;
    const Lookup& lookup() const;

    const SpectralField* v_;
    const SpectralField* force_;
    std::vector<SpectralField::Mode> modes_;
    std::vector<SpectralField::Mode> force_modes_;
    bool use_sparse_;
    mutable std::unique_ptr<PhysicalField> v_phys_;
    mutable std::unique_ptr<Lookup> lookup_;
};

PhysicalField increment(const SpectralField& v, const Vec3& h);

double s_parallel(const SpectralField& v, double ell, const SphericalQuadrature& quad);
double s_zero(const SpectralField& v, double ell, const SphericalQuadrature& quad);
double s_p_abs(const SpectralField& v, double ell, double p, const SphericalQuadrature& quad);

Mat3 correlator_gamma(const SpectralField& v, const Vec3& h);
double gamma_bar(const SpectralField& v, double ell, const SphericalQuadrature& quad);
Mat3 structure_matrix_D(const SpectralField& v, const Vec3& h, int k_index);

SphericalAverages spherical_J_G_H_f(const SpectralField& v, const SpectralField& f, double ell,
                                    const SphericalQuadrature& quad);

ViscousCorrection viscous_correction(const SpectralField& v, double ell, const SphericalQuadrature& quad,
                                     double nu, double alpha = 1.0 / 3.0, double q = 2.0);

// Full record at (t, ell).  s3 needs the FFT route and is filled only when
// with_s3 is set.  force may be null (fbar, ftilde = 0).
StructureRecord evaluate_record(const TwoPointKernel& kern, double t, double ell,
                                const SphericalQuadrature& quad, double nu, bool with_s3 = false);

}  // namespace khm::stats
