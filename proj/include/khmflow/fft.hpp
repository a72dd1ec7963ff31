#pragma once

#include <complex>
#include <vector>

namespace khm::spectral {

// Thin wrapper around FFTW c2c 3D transforms.  Plans are cached per grid
// size with FFTW_ESTIMATE (deterministic plan choice) and guarded by a
// mutex; execution on caller-owned buffers is thread safe.
//
// Conventions: backward (+i) is synthesis, forward (-i) divided by n^3 is
// analysis, so coefficients c(k) satisfy  v(x) = sum_k c(k) exp(i k.x).
void fft_backward(int n, const std::complex<double>* in, std::complex<double>* out);
void fft_forward_scaled(int n, const std::complex<double>* in, std::complex<double>* out);

}  // namespace khm::spectral
