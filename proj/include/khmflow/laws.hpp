#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "khmflow/forcing.hpp"
#include "khmflow/quadrature.hpp"
#include "khmflow/solver.hpp"
#include "khmflow/stats.hpp"

namespace khm::laws {

// Normalization ledger.  Spherical averages are stored normalized (weights
// summing to 1) while the source formulas carry explicit 4pi factors from
// unnormalized sphere integrals; the constants below absorb those factors in
// exactly one place and every law formula reads them from here.
namespace paper_constants {
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSphereArea = 4.0 * kPi;
// 1/(2 pi) acting on an unnormalized J or G integral -> 2 x normalized value
inline constexpr double kJKernelS0 = 2.0;
inline constexpr double kGKernelSpar = 2.0;
// 3/(8 pi) and 15/(8 pi) under the normalized convention
inline constexpr double kEpsEllJ = 1.5;
inline constexpr double kEpsBarG = 7.5;
inline constexpr double kFourThirds = 4.0 / 3.0;
inline constexpr double kFourFifths = 4.0 / 5.0;
inline constexpr double kFourFifteenths = 4.0 / 15.0;
inline constexpr double kEightFifteenths = 8.0 / 15.0;
inline constexpr double kDissipationThreshold = 0.25;
}  // namespace paper_constants

// Smooth compactly supported radial bump exp(-1/(1-u^2)), u = (r-center)/width,
// with closed-form first and second derivatives.  Support must stay strictly
// inside (0, pi).
struct BumpProfile {
    double center;
    double width;

    BumpProfile(double c, double w);
    double lo() const { return center - width; }
    double hi() const { return center + width; }
    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;
};

// eta(h) = phi(|h|) I + varphi(|h|) h^ (x) h^ for the KHM balance.
struct TestFunctionSpec {
    std::optional<BumpProfile> phi;
    std::optional<BumpProfile> varphi;
    double support_lo() const;
    double support_hi() const;
};

// Scale window [ell_D, ell_I] with ell_D = nu^K, K = 1/(2 - alpha q) - kappa.
struct InertialRange {
    double nu;
    double alpha;
    double q;
    double kappa;
    double ell_I;
    int n_ells = 8;

    InertialRange(double nu_, double alpha_, double q_, double kappa_, double ell_I_, int n_ells_ = 8);
    double exponent() const { return 1.0 / (2.0 - alpha * q) - kappa; }
    double ell_D() const;
    std::vector<double> ells() const;  // log-spaced in [ell_D, ell_I]
};

// Quadrature for int_0^ell tau^m f(tau) dtau: substitution tau = ell u^2 and
// composite Simpson in u, so nodes grade quadratically toward tau = 0 and all
// weights stay nonnegative.  The tau = 0 endpoint carries zero weight; the
// ell -> 0 anchor values enter the law formulas analytically instead.
struct TauQuadrature {
    std::vector<double> tau;
    std::vector<double> w;
    static TauQuadrature build(double ell, int n_intervals = 64);
};

// Time-gridded source of two-point statistics consumed by every law
// residual.  Real trajectories implement it via TrajectoryStats; synthetic
// tables implement it directly in tests.
class TwoPointStats {
  public:
    virtual ~TwoPointStats() = default;
    virtual double nu() const = 0;
    virtual int n_times() const = 0;
    virtual double time(int i) const = 0;
    virtual const stats::StructureRecord& at(int i, double ell) const = 0;
    virtual double s3(int i, double ell) const = 0;
    virtual double l2sq(int i) const = 0;
    virtual double force_work_integral(int i) const = 0;  // int_0^{t_i} <f,v>
    // grid spacing guarding the KHM support check; 0 disables the check
    virtual double resolution() const { return 0.0; }

    double epsilon(int i) const { return 0.5 * (l2sq(0) - l2sq(i)) + force_work_integral(i); }
    int final_index() const { return n_times() - 1; }
    int index_at_or_before(double t) const;
};

// Caching adapter over a solver trajectory: records are evaluated lazily per
// (snapshot, ell) with a fixed spherical quadrature and the force field of
// the matching snapshot time.
class TrajectoryStats : public TwoPointStats {
  public:
    TrajectoryStats(const solver::Trajectory& traj, const forcing::ForcingSpec& forcing,
                    stats::SphericalQuadrature quad);
    ~TrajectoryStats() override;

    double nu() const override;
    int n_times() const override;
    double time(int i) const override;
    const stats::StructureRecord& at(int i, double ell) const override;
    double s3(int i, double ell) const override;
    double l2sq(int i) const override;
    double force_work_integral(int i) const override;
    double resolution() const override;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// --- time-grid helpers -----------------------------------------------------

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y);
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);
// (int |f|^p dt)^{1/p} over the grid span
double lp_time_norm(const std::vector<double>& t, const std::vector<double>& f, double p);

// --- the exact relations ---------------------------------------------------

struct KhmOptions {
    int radial_intervals = 16;  // composite Simpson over the eta support
};

struct KhmBreakdown {
    double gamma_term = 0.0;    // int eta : Gamma(t) - int eta : Gamma(0)
    double d_term = 0.0;        // +1/2 sum_k int_0^t int d_k eta : D^k
    double viscous_term = 0.0;  // 2 nu int_0^t int lap(eta) : Gamma
    double force_term = 0.0;    // 2 int_0^t int eta : f (x) T_h v
    double raw() const { return gamma_term + d_term - viscous_term - force_term; }
    double max_term() const;
    double normalized() const;
};

// Karmann-Howarth-Monin balance residual at time t (clamped to the stat
// grid).  Throws UnresolvedSupport when the test-function support reaches
// below the grid resolution.
KhmBreakdown khm_residual(const TwoPointStats& stats, const TestFunctionSpec& eta, double t,
                          const KhmOptions& opts = {});

struct IdentityOptions {
    int tau_intervals = 64;
};

struct S0IdentityBreakdown {
    double s0_term = 0.0;     // int_0^t S0(r,ell)/ell dr
    double visc_term = 0.0;   // int_0^t 4 nu d_l gammabar / ell dr
    double force_term = 0.0;  // (4/ell^3) int_0^ell tau^2 int_0^t fbar
    double j_term = 0.0;      // (2/ell^3) int_0^ell tau^2 [J(t)-J(0)]
    double raw() const { return s0_term + visc_term + force_term - j_term; }
    double max_term() const;
    double normalized() const;
};
S0IdentityBreakdown s0_identity_residual(const TwoPointStats& stats, double ell, double t,
                                         const IdentityOptions& opts = {});

struct SParIdentityBreakdown {
    double s_par_term = 0.0;  // int_0^t S_par(r,ell)/ell dr
    double h_term = 0.0;      // 4 nu int_0^t H(r,ell)/ell dr
    double s0_term = 0.0;     // 2 ell^-5 int_0^t int_0^ell tau^3 S0
    double force_term = 0.0;  // 4 ell^-5 int_0^t int_0^ell tau^4 ftilde
    double g_term = 0.0;      // (2/ell^5) int_0^ell tau^4 [G(t)-G(0)]
    double raw() const { return s_par_term + h_term - s0_term + force_term - g_term; }
    double max_term() const;
    double normalized() const;
};
SParIdentityBreakdown s_par_identity_residual(const TwoPointStats& stats, double ell, double t,
                                              const IdentityOptions& opts = {});

// || int_0^. S0(r,ell)/ell dr + (4/3) eps_nu(.) ||_{L^p} over the stat grid.
double four_thirds_residual(const TwoPointStats& stats, double ell, double p);
// Same with S_par and 4/5.
double four_fifths_residual(const TwoPointStats& stats, double ell, double p);

struct RandomTimeResidual {
    double four_fifths;
    double four_thirds;
};
// int_0^1 psi(t) |...|^p dt for a random-time density psi; BadDensity when
// psi is negative, not normalized, or breaks the L^{1+kappa} bound.
RandomTimeResidual random_time_residual(const TwoPointStats& stats, double ell, double p,
                                        const std::function<double(double)>& psi, double kappa,
                                        double k_bound);

struct ModifiedEpsilons {
    double eps_ell;
    double eps_bar_ell;
    double eps_tilde_ell;
};
ModifiedEpsilons modified_epsilons(const TwoPointStats& stats, double ell,
                                   const IdentityOptions& opts = {});

struct ModifiedLawResiduals {
    double modified_43;
    double modified_45;
};
ModifiedLawResiduals modified_law_residuals(const TwoPointStats& stats, double ell,
                                            const IdentityOptions& opts = {});

struct ExponentFit {
    double zeta_fit;
    double zeta3_lo;  // 3 alpha
    double zeta3_hi;  // 1
};
// Least-squares slope of log(integral) against log(ell); requires >= 5
// samples with positive integrals (DegenerateData otherwise).
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& ell_and_integral, double alpha);
// Convenience: integrates s3 over the stat grid per ell, then fits.
ExponentFit exponent_fit_from_stats(const TwoPointStats& stats, const std::vector<double>& ells,
                                    double alpha);

struct DissipationProbeRow {
    double nu;
    double dissipation;  // nu int_0^1 ||grad v||^2
};
struct DissipationProbe {
    std::vector<DissipationProbeRow> rows;  // sorted by decreasing nu
    double threshold = paper_constants::kDissipationThreshold;
    bool decreasing_with_nu;  // trend as nu -> 0
};
DissipationProbe anomalous_dissipation_probe(std::vector<DissipationProbeRow> rows);

}  // namespace khm::laws
