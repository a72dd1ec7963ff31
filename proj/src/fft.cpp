#include "khmflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace khm::spectral {

namespace {

struct PlanPair {
    fftw_plan backward = nullptr;
    fftw_plan forward = nullptr;
};

std::mutex g_planner_mutex;
std::map<int, PlanPair> g_plans;

// FFTW guru interface lets one plan run on any aligned buffer pair; we plan
// once on scratch arrays and execute with fftw_execute_dft.
PlanPair& plans_for(int n) {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    auto it = g_plans.find(n);
    if (it != g_plans.end()) return it->second;

    const std::size_t count = std::size_t(n) * n * n;
    fftw_complex* a = fftw_alloc_complex(count);
    fftw_complex* b = fftw_alloc_complex(count);
    PlanPair pp;
    pp.backward = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    pp.forward = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    return g_plans.emplace(n, pp).first->second;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void fft_backward(int n, const std::complex<double>* in, std::complex<double>* out) {
    PlanPair& pp = plans_for(n);
    // fftw_execute_dft does not modify the input for out-of-place c2c plans.
    fftw_execute_dft(pp.backward, as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

void fft_forward_scaled(int n, const std::complex<double>* in, std::complex<double>* out) {
    PlanPair& pp = plans_for(n);
    fftw_execute_dft(pp.forward, as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
    const double scale = 1.0 / (double(n) * n * n);
    const std::size_t count = std::size_t(n) * n * n;
    for (std::size_t i = 0; i < count; ++i) out[i] *= scale;
}

}  // namespace khm::spectral
