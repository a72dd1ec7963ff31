#pragma once

#include "khmflow/field.hpp"

namespace khm::spectral {

// Rank-2 spectral tensor; entry(r,c) holds the coefficients of d v_c / d x_r.
struct SpectralTensor {
    GridSpec grid;
    std::array<CoeffArray, 9> comps;
    const CoeffArray& entry(int r, int c) const { return comps[3 * r + c]; }
    CoeffArray& entry(int r, int c) { return comps[3 * r + c]; }
};

// Orthogonal projection onto divergence-free fields: c(k) <- (I - k k^T/|k|^2) c(k),
// mean mode untouched.  Idempotent; annihilates discrete gradients.
SpectralField leray_project(const SpectralField& f);

// Exact translation of a band-limited field: c(k) <- c(k) exp(i k.h).
SpectralField shift(const SpectralField& v, const Vec3& h);

SpectralTensor gradient(const SpectralField& v);
SpectralField laplacian(const SpectralField& v);

// Relative divergence: max_k |k.c(k)| / max_k |c(k)| (0 for the zero field).
double divergence_rel(const SpectralField& v);

struct NormReport {
    double l2_sq = 0.0;
    double h1_sq = 0.0;
    double h_alpha = 0.0;        // (sum (1+|k|^2)^alpha |c|^2 (2pi)^3 )^(1/2)
    double holder_alpha = 0.0;   // finite-difference C^alpha estimate
};

// holder_alpha is max over a fixed dyadic set of axis offsets of
// ||delta_h v||_inf / |h|^alpha; a diagnostic estimate, not a norm.
NormReport norms(const SpectralField& v, double alpha);

// Reference initial data: Taylor-Green vortex a*(cos x sin y, -sin x cos y, 0).
SpectralField taylor_green(const GridSpec& grid, double amplitude = 1.0);
// Single divergence-free mode c(k) = amplitude * e_axis (+ conjugate);
// requires k . e_axis = 0.
SpectralField single_mode(const GridSpec& grid, const Vec3i& k, int axis, Complex amplitude);
SpectralField zero_field(const GridSpec& grid);

}  // namespace khm::spectral
