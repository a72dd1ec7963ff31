#pragma once

#include "khmflow/field.hpp"

namespace khm::forcing {

using spectral::GridSpec;
using spectral::SpectralField;
using spectral::Vec3i;

enum class Family { Zero, FixedMode, AlternatingShear, TimeRamp };

// Deterministic, mean-free, divergence-free force families.
//
//   zero               f = 0
//   fixed_mode         f = a * m(k, axis), constant in time
//   alternating_shear  f = a * [cos(2 pi t/T) m(k,axis) + sin(2 pi t/T) m(k2,axis2)]
//   time_ramp          f = t^{-theta} * inner(t), inner in {fixed_mode,
//                      alternating_shear}; f(0) is defined as the zero field
//
// where m(k, axis) is the unit single-mode field with coefficient e_axis at
// +-k (physical amplitude 2 cos(k.x) along the axis), requiring k.e_axis = 0.
struct ForcingSpec {
    Family family = Family::Zero;
    Vec3i k{1, 0, 0};
    int axis = 1;
    double amplitude = 0.0;
    // alternating_shear second leg
    Vec3i k2{0, 0, 1};
    int axis2 = 0;
    double period = 1.0;
    // time_ramp
    double ramp_theta = 0.0;
    Family inner = Family::FixedMode;

    void validate() const;
};

// Pure in (spec, t): repeated calls are bit-identical.
SpectralField evaluate(const ForcingSpec& spec, double t, const GridSpec& grid);

// ||f(t)||_{L2} in closed form (no grid involved); cross-checked against
// built fields in the tests.
double norm_l2(const ForcingSpec& spec, double t);

// ||f||_{L^{1+sigma}(0,1;L2)} by midpoint quadrature on a power-graded grid
// with 10^-3 resolution; +inf when the ramp envelope is not integrable.
double force_integrability(const ForcingSpec& spec, double sigma);

}  // namespace khm::forcing
