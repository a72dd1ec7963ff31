#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace khm::spectral {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
// Physical domain is the periodic box [0,2pi)^3, so wavevectors are integer
// triples and the volume factor is (2pi)^3.
inline constexpr double kBoxVolume = kTwoPi * kTwoPi * kTwoPi;

using Vec3 = std::array<double, 3>;
using Vec3i = std::array<int, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double dot(const Vec3i& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline int norm2(const Vec3i& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }

// Uniform collocation grid for [0,2pi)^3 with n points per dimension.
// Wavevector components live in [-n/2, n/2); FFT index i maps to
// k = i for i <= n/2-1 and k = i-n otherwise.  The dealias mask keeps
// |k_d| <= floor(dealias_fraction * n/2) per component, never the Nyquist
// plane.
struct GridSpec {
    int n = 32;
    double dealias_fraction = 2.0 / 3.0;

    GridSpec() = default;
    GridSpec(int n_, double dealias = 2.0 / 3.0) : n(n_), dealias_fraction(dealias) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n must be even and >= 8");
        if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
            throw std::invalid_argument("GridSpec: dealias_fraction must be in (0,1]");
    }

    std::int64_t points() const { return std::int64_t(n) * n * n; }
    double dx() const { return kTwoPi / n; }

    int wavenumber(int index) const { return index <= n / 2 - 1 ? index : index - n; }
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    // Largest retained |k_d| per component after dealiasing.
    int kmax() const {
        int m = static_cast<int>(std::floor(dealias_fraction * (n / 2)));
        return std::min(m, n / 2 - 1);
    }
    bool in_band(const Vec3i& k) const {
        const int m = kmax();
        return std::abs(k[0]) <= m && std::abs(k[1]) <= m && std::abs(k[2]) <= m;
    }

    // Flattened index with the last dimension fastest: (i,j,k) -> (i*n+j)*n+k.
    std::int64_t flat(int i, int j, int k) const {
        return (std::int64_t(i) * n + j) * n + k;
    }
    Vec3 point(int i, int j, int k) const {
        return {kTwoPi * i / n, kTwoPi * j / n, kTwoPi * k / n};
    }

    bool operator==(const GridSpec&) const = default;
};

}  // namespace khm::spectral
