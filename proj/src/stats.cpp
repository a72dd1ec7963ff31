#include "khmflow/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace khm::stats {

using spectral::dot;

namespace {

using spectral::kBoxVolume;

// Above this many nonzero modes the O(N^2) pair sum loses to the FFT route.
constexpr std::size_t kSparseModeLimit = 192;

std::int64_t pack_key(const Vec3i& k) {
    // components are bounded by n/2 < 2^15
    return ((std::int64_t(k[0]) + 32768) << 34) | ((std::int64_t(k[1]) + 32768) << 17) |
           (std::int64_t(k[2]) + 32768);
}

double sinc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace

struct TwoPointKernel::Lookup {
    std::unordered_map<std::int64_t, int> map;
    explicit Lookup(const std::vector<SpectralField::Mode>& modes) {
        map.reserve(modes.size() * 2);
        for (std::size_t i = 0; i < modes.size(); ++i) map.emplace(pack_key(modes[i].k), int(i));
    }
    int find(const Vec3i& k) const {
        auto it = map.find(pack_key(k));
        return it == map.end() ? -1 : it->second;
    }
};

TwoPointKernel::TwoPointKernel(const SpectralField& v, const SpectralField* force)
    : v_(&v), force_(force) {
    modes_ = v.nonzero_modes();
    if (force_) force_modes_ = force_->nonzero_modes();
    use_sparse_ = modes_.size() <= kSparseModeLimit;
}

TwoPointKernel::~TwoPointKernel() = default;

void TwoPointKernel::ensure_physical() const {
    if (!v_phys_) v_phys_ = std::make_unique<PhysicalField>(v_->to_physical());
}

const TwoPointKernel::Lookup& TwoPointKernel::lookup() const {
    if (!lookup_) lookup_ = std::make_unique<Lookup>(modes_);
    return *lookup_;
}

TwoPointKernel::Cubic TwoPointKernel::cubic(double ell, const Vec3& nhat) const {
    return use_sparse_ ? cubic_sparse(ell, nhat) : cubic_fft(ell, nhat);
}

TwoPointKernel::Cubic TwoPointKernel::cubic_sparse(double ell, const Vec3& nhat) const {
    // int delta_a delta_b delta_c dx = (2pi)^3 sum_{k1+k2+k3=0} dhat_a(k1) dhat_b(k2) dhat_c(k3)
    // with dhat(k) = c(k) (e^{i l k.n} - 1).
    const std::size_t n = modes_.size();
    std::vector<std::array<Complex, 3>> d(n);
    std::vector<Complex> dn(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double theta = ell * dot(modes_[m].k, nhat);
        const Complex phase = Complex(std::cos(theta) - 1.0, std::sin(theta));
        for (int c = 0; c < 3; ++c) d[m][c] = modes_[m].a[c] * phase;
        dn[m] = d[m][0] * nhat[0] + d[m][1] * nhat[1] + d[m][2] * nhat[2];
    }
    const Lookup& idx = lookup();
    double acc_zero = 0.0, acc_par = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const Vec3i k3{-modes_[p].k[0] - modes_[q].k[0], -modes_[p].k[1] - modes_[q].k[1],
                           -modes_[p].k[2] - modes_[q].k[2]};
            const int r = idx.find(k3);
            if (r < 0) continue;
            const Complex dpq = d[p][0] * d[q][0] + d[p][1] * d[q][1] + d[p][2] * d[q][2];
            acc_zero += (dpq * dn[r]).real();
            acc_par += (dn[p] * dn[q] * dn[r]).real();
        }
    }
    return {acc_zero * kBoxVolume, acc_par * kBoxVolume};
}

TwoPointKernel::Cubic TwoPointKernel::cubic_fft(double ell, const Vec3& nhat) const {
    ensure_physical();
    const Vec3 h{ell * nhat[0], ell * nhat[1], ell * nhat[2]};
    const PhysicalField shifted = spectral::shift(*v_, h).to_physical();
    const std::int64_t count = v_->grid().points();
    double acc_zero = 0.0, acc_par = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
        const double d0 = shifted.component(0)[i] - v_phys_->component(0)[i];
        const double d1 = shifted.component(1)[i] - v_phys_->component(1)[i];
        const double d2 = shifted.component(2)[i] - v_phys_->component(2)[i];
        const double along = d0 * nhat[0] + d1 * nhat[1] + d2 * nhat[2];
        acc_zero += (d0 * d0 + d1 * d1 + d2 * d2) * along;
        acc_par += along * along * along;
    }
    const double cell = kBoxVolume / double(count);
    return {acc_zero * cell, acc_par * cell};
}

double TwoPointKernel::abs_moment(double ell, const Vec3& nhat, double p) const {
    ensure_physical();
    const Vec3 h{ell * nhat[0], ell * nhat[1], ell * nhat[2]};
    const PhysicalField shifted = spectral::shift(*v_, h).to_physical();
    const std::int64_t count = v_->grid().points();
    double acc = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
        const double d0 = shifted.component(0)[i] - v_phys_->component(0)[i];
        const double d1 = shifted.component(1)[i] - v_phys_->component(1)[i];
        const double d2 = shifted.component(2)[i] - v_phys_->component(2)[i];
        acc += std::pow(d0 * d0 + d1 * d1 + d2 * d2, 0.5 * p);
    }
    return acc * kBoxVolume / double(count);
}

Mat3 TwoPointKernel::d_matrix(const Vec3& h, int k_index) const {
    if (k_index < 0 || k_index > 2) throw std::invalid_argument("d_matrix: k_index in {0,1,2}");
    Mat3 out{};
    if (use_sparse_) {
        const std::size_t n = modes_.size();
        std::vector<std::array<Complex, 3>> d(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double theta = dot(modes_[m].k, h);
            const Complex phase = Complex(std::cos(theta) - 1.0, std::sin(theta));
            for (int c = 0; c < 3; ++c) d[m][c] = modes_[m].a[c] * phase;
        }
        const Lookup& idx = lookup();
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                const Vec3i k3{-modes_[p].k[0] - modes_[q].k[0], -modes_[p].k[1] - modes_[q].k[1],
                               -modes_[p].k[2] - modes_[q].k[2]};
                const int r = idx.find(k3);
                if (r < 0) continue;
                const Complex dk = d[r][k_index];
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) out[3 * a + b] += (d[p][a] * d[q][b] * dk).real();
            }
        for (double& x : out) x *= kBoxVolume;
        return out;
    }
    ensure_physical();
    const PhysicalField shifted = spectral::shift(*v_, h).to_physical();
    const std::int64_t count = v_->grid().points();
    for (std::int64_t i = 0; i < count; ++i) {
        const double d0 = shifted.component(0)[i] - v_phys_->component(0)[i];
        const double d1 = shifted.component(1)[i] - v_phys_->component(1)[i];
        const double d2 = shifted.component(2)[i] - v_phys_->component(2)[i];
        const double dv[3] = {d0, d1, d2};
        const double dk = dv[k_index];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) out[3 * a + b] += dv[a] * dv[b] * dk;
    }
    const double cell = kBoxVolume / double(count);
    for (double& x : out) x *= cell;
    return out;
}

TwoPointKernel::Quadratic TwoPointKernel::quadratic(double ell, const Vec3& nhat) const {
    Quadratic out{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (const auto& m : modes_) {
        const double kn = dot(m.k, nhat);
        const double theta = ell * kn;
        const double ct = std::cos(theta), st = std::sin(theta);
        const double a2 = std::norm(m.a[0]) + std::norm(m.a[1]) + std::norm(m.a[2]);
        const Complex an = m.a[0] * nhat[0] + m.a[1] * nhat[1] + m.a[2] * nhat[2];
        const double an2 = std::norm(an);
        out.j += a2 * ct;
        out.g += an2 * ct;
        out.h_grad += -an2 * kn * st;
        out.djdl_over_l += -a2 * kn * kn * sinc(theta);
    }
    if (force_) {
        const Lookup& idx = lookup();
        for (const auto& fm : force_modes_) {
            const int r = idx.find(fm.k);
            if (r < 0) continue;
            const auto& vm = modes_[r];
            const double theta = ell * dot(fm.k, nhat);
            const Complex phase(std::cos(theta), std::sin(theta));
            const Complex fdotv = std::conj(fm.a[0]) * vm.a[0] + std::conj(fm.a[1]) * vm.a[1] +
                                  std::conj(fm.a[2]) * vm.a[2];
            const Complex fn = fm.a[0] * nhat[0] + fm.a[1] * nhat[1] + fm.a[2] * nhat[2];
            const Complex vn = vm.a[0] * nhat[0] + vm.a[1] * nhat[1] + vm.a[2] * nhat[2];
            out.fbar += (fdotv * phase).real();
            out.ftilde += (std::conj(fn) * vn * phase).real();
        }
    }
    out.j *= kBoxVolume;
    out.g *= kBoxVolume;
    out.h_grad *= kBoxVolume;
    out.fbar *= kBoxVolume;
    out.ftilde *= kBoxVolume;
    out.djdl_over_l *= kBoxVolume;
    return out;
}

Mat3 TwoPointKernel::gamma(const Vec3& h) const {
    Mat3 out{};
    for (const auto& m : modes_) {
        const double theta = dot(m.k, h);
        const Complex phase(std::cos(theta), std::sin(theta));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) out[3 * a + b] += (std::conj(m.a[a]) * m.a[b] * phase).real();
    }
    for (double& x : out) x *= kBoxVolume;
    return out;
}

PhysicalField increment(const SpectralField& v, const Vec3& h) {
    const PhysicalField base = v.to_physical();
    PhysicalField shifted = spectral::shift(v, h).to_physical();
    for (int c = 0; c < 3; ++c) {
        auto& a = shifted.component(c);
        const auto& b = base.component(c);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    return shifted;
}

double s_parallel(const SpectralField& v, double ell, const SphericalQuadrature& quad) {
    if (ell < 0.0) throw std::invalid_argument("s_parallel: ell >= 0");
    TwoPointKernel kern(v);
    double acc = 0.0;
    for (int i = 0; i < quad.size(); ++i) acc += quad.weights[i] * kern.cubic(ell, quad.nodes[i]).s_par;
    return acc;
}

double s_zero(const SpectralField& v, double ell, const SphericalQuadrature& quad) {
    if (ell < 0.0) throw std::invalid_argument("s_zero: ell >= 0");
    TwoPointKernel kern(v);
    double acc = 0.0;
    for (int i = 0; i < quad.size(); ++i) acc += quad.weights[i] * kern.cubic(ell, quad.nodes[i]).s_zero;
    return acc;
}

double s_p_abs(const SpectralField& v, double ell, double p, const SphericalQuadrature& quad) {
    if (ell < 0.0) throw std::invalid_argument("s_p_abs: ell >= 0");
    if (p < 1.0) throw std::invalid_argument("s_p_abs: p >= 1");
    TwoPointKernel kern(v);
    double acc = 0.0;
    for (int i = 0; i < quad.size(); ++i) acc += quad.weights[i] * kern.abs_moment(ell, quad.nodes[i], p);
    return acc;
}

Mat3 correlator_gamma(const SpectralField& v, const Vec3& h) {
    return TwoPointKernel(v).gamma(h);
}

double gamma_bar(const SpectralField& v, double ell, const SphericalQuadrature& quad) {
    TwoPointKernel kern(v);
    double acc = 0.0;
    for (int i = 0; i < quad.size(); ++i) acc += quad.weights[i] * kern.quadratic(ell, quad.nodes[i]).j;
    return acc;
}

Mat3 structure_matrix_D(const SpectralField& v, const Vec3& h, int k_index) {
    return TwoPointKernel(v).d_matrix(h, k_index);
}

SphericalAverages spherical_J_G_H_f(const SpectralField& v, const SpectralField& f, double ell,
                                    const SphericalQuadrature& quad) {
    TwoPointKernel kern(v, &f);
    SphericalAverages out{0.0, 0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < quad.size(); ++i) {
        const auto q = kern.quadratic(ell, quad.nodes[i]);
        const double w = quad.weights[i];
        out.j_val += w * q.j;
        out.g_val += w * q.g;
        out.h_val += w * q.h_grad;
        out.fbar += w * q.fbar;
        out.ftilde += w * q.ftilde;
    }
    return out;
}

ViscousCorrection viscous_correction(const SpectralField& v, double ell, const SphericalQuadrature& quad,
                                     double nu, double alpha, double q) {
    TwoPointKernel kern(v);
    double acc = 0.0;
    for (int i = 0; i < quad.size(); ++i)
        acc += quad.weights[i] * kern.quadratic(ell, quad.nodes[i]).djdl_over_l;
    ViscousCorrection out;
    out.value = 4.0 * nu * acc;
    out.bound_shape = ell > 0.0 ? std::sqrt(nu) * std::pow(ell, 0.5 * alpha * q - 1.0) : 0.0;
    return out;
}

StructureRecord evaluate_record(const TwoPointKernel& kern, double t, double ell,
                                const SphericalQuadrature& quad, double nu, bool with_s3) {
    StructureRecord r;
    r.t = t;
    r.ell = ell;
    for (int i = 0; i < quad.size(); ++i) {
        const double w = quad.weights[i];
        const auto c = kern.cubic(ell, quad.nodes[i]);
        const auto qd = kern.quadratic(ell, quad.nodes[i]);
        r.s_zero += w * c.s_zero;
        r.s_par += w * c.s_par;
        r.j_val += w * qd.j;
        r.g_val += w * qd.g;
        r.h_val += w * qd.h_grad;
        r.fbar += w * qd.fbar;
        r.ftilde += w * qd.ftilde;
        r.visc += w * 4.0 * nu * qd.djdl_over_l;
        if (with_s3) r.s3 += w * kern.abs_moment(ell, quad.nodes[i], 3.0);
    }
    r.gamma_bar = r.j_val;
    return r;
}

}  // namespace khm::stats
