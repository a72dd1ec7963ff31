#include "khmflow/laws.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "khmflow/errors.hpp"

namespace khm::laws {

// --- test functions ----------------------------------------------------------

BumpProfile::BumpProfile(double c, double w) : center(c), width(w) {
    if (w <= 0.0) throw std::invalid_argument("BumpProfile: width must be positive");
    if (!(c - w > 0.0 && c + w < paper_constants::kPi))
        throw std::invalid_argument("BumpProfile: support must lie strictly inside (0, pi)");
}

double BumpProfile::value(double r) const {
    const double u = (r - center) / width;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double BumpProfile::d1(double r) const {
    const double u = (r - center) / width;
    if (std::abs(u) >= 1.0) return 0.0;
    const double s = 1.0 - u * u;
    return value(r) * (-2.0 * u / (s * s)) / width;
}

double BumpProfile::d2(double r) const {
    const double u = (r - center) / width;
    if (std::abs(u) >= 1.0) return 0.0;
    const double s = 1.0 - u * u;
    const double g1 = -2.0 * u / (s * s);                       // d/du of -1/s
    const double g2 = (-2.0 * s - 8.0 * u * u) / (s * s * s);   // d/du of g1
    return value(r) * (g1 * g1 + g2) / (width * width);
}

double TestFunctionSpec::support_lo() const {
    double lo = paper_constants::kPi;
    if (phi) lo = std::min(lo, phi->lo());
    if (varphi) lo = std::min(lo, varphi->lo());
    return lo;
}

double TestFunctionSpec::support_hi() const {
    double hi = 0.0;
    if (phi) hi = std::max(hi, phi->hi());
    if (varphi) hi = std::max(hi, varphi->hi());
    return hi;
}

// --- inertial range ----------------------------------------------------------

InertialRange::InertialRange(double nu_, double alpha_, double q_, double kappa_, double ell_I_,
                             int n_ells_)
    : nu(nu_), alpha(alpha_), q(q_), kappa(kappa_), ell_I(ell_I_), n_ells(n_ells_) {
    if (!(nu > 0.0)) throw std::invalid_argument("InertialRange: nu > 0 required");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("InertialRange: alpha in (0,1)");
    if (!(q >= 1.0 && q <= 2.0)) throw std::invalid_argument("InertialRange: q in [1,2]");
    if (!(kappa > 0.0)) throw std::invalid_argument("InertialRange: kappa > 0 required");
    if (n_ells < 2) throw std::invalid_argument("InertialRange: n_ells >= 2");
    if (!(ell_D() < ell_I)) throw std::invalid_argument("InertialRange: ell_D must be below ell_I");
}

double InertialRange::ell_D() const { return std::pow(nu, exponent()); }

std::vector<double> InertialRange::ells() const {
    std::vector<double> out(n_ells);
    const double lo = std::log(ell_D());
    const double hi = std::log(ell_I);
    for (int i = 0; i < n_ells; ++i)
        out[i] = std::exp(lo + (hi - lo) * double(i) / double(n_ells - 1));
    return out;
}

// --- tau quadrature ----------------------------------------------------------

TauQuadrature TauQuadrature::build(double ell, int n_intervals) {
    if (ell <= 0.0) throw std::invalid_argument("TauQuadrature: ell > 0 required");
    if (n_intervals < 2 || n_intervals % 2 != 0)
        throw std::invalid_argument("TauQuadrature: even interval count >= 2 required");
    TauQuadrature q;
    const int n = n_intervals;
    const double du = 1.0 / n;
    q.tau.resize(n + 1);
    q.w.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double u = double(i) * du;
        q.tau[i] = ell * u * u;
        double simpson = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        // d tau = 2 ell u du
        q.w[i] = simpson * du / 3.0 * 2.0 * ell * u;
    }
    return q;
}

// --- TwoPointStats -----------------------------------------------------------

int TwoPointStats::index_at_or_before(double t) const {
    const int n = n_times();
    if (t < time(0) - 1e-12 || t > time(n - 1) + 1e-12)
        throw OutOfRange("time " + std::to_string(t) + " outside statistics grid");
    int best = 0;
    for (int i = 0; i < n; ++i)
        if (time(i) <= t + 1e-12) best = i;
    return best;
}

struct TrajectoryStats::Impl {
    const solver::Trajectory* traj;
    forcing::ForcingSpec forcing;
    stats::SphericalQuadrature quad;
    double ledger_dt;

    std::vector<std::unique_ptr<spectral::SpectralField>> force_fields;
    std::vector<std::unique_ptr<stats::TwoPointKernel>> kernels;
    std::map<std::pair<int, std::int64_t>, stats::StructureRecord> cache;
    std::map<std::pair<int, std::int64_t>, double> s3_cache;
    std::mutex mutex;

    const stats::TwoPointKernel& kernel(int i) {
        if (!kernels[i]) {
            const spectral::SpectralField* f = nullptr;
            if (forcing.family != forcing::Family::Zero) {
                if (!force_fields[i])
                    force_fields[i] = std::make_unique<spectral::SpectralField>(
                        forcing::evaluate(forcing, traj->snapshot_times[i], traj->snapshots[i].grid()));
                f = force_fields[i].get();
            }
            kernels[i] = std::make_unique<stats::TwoPointKernel>(traj->snapshots[i], f);
        }
        return *kernels[i];
    }
};

TrajectoryStats::TrajectoryStats(const solver::Trajectory& traj, const forcing::ForcingSpec& forcing,
                                 stats::SphericalQuadrature quad)
    : impl_(std::make_unique<Impl>()) {
    impl_->traj = &traj;
    impl_->forcing = forcing;
    impl_->quad = std::move(quad);
    impl_->ledger_dt = traj.ledger.size() > 1 ? traj.ledger[1].t - traj.ledger[0].t : 1.0;
    impl_->force_fields.resize(traj.snapshots.size());
    impl_->kernels.resize(traj.snapshots.size());
}

TrajectoryStats::~TrajectoryStats() = default;

double TrajectoryStats::nu() const { return impl_->traj->nu; }
int TrajectoryStats::n_times() const { return int(impl_->traj->snapshot_times.size()); }
double TrajectoryStats::time(int i) const { return impl_->traj->snapshot_times[i]; }
double TrajectoryStats::l2sq(int i) const {
    return impl_->traj->snapshots[i].l2_sq();
}
double TrajectoryStats::resolution() const { return impl_->traj->snapshots.front().grid().dx(); }

double TrajectoryStats::force_work_integral(int i) const {
    const std::size_t li = std::size_t(std::llround(impl_->traj->snapshot_times[i] / impl_->ledger_dt));
    return impl_->traj->cum_fv[std::min(li, impl_->traj->cum_fv.size() - 1)];
}

const stats::StructureRecord& TrajectoryStats::at(int i, double ell) const {
    const auto key = std::make_pair(i, std::bit_cast<std::int64_t>(ell));
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->cache.find(key);
    if (it != impl_->cache.end()) return it->second;
    const stats::StructureRecord rec = stats::evaluate_record(
        impl_->kernel(i), impl_->traj->snapshot_times[i], ell, impl_->quad, impl_->traj->nu, false);
    return impl_->cache.emplace(key, rec).first->second;
}

double TrajectoryStats::s3(int i, double ell) const {
    const auto key = std::make_pair(i, std::bit_cast<std::int64_t>(ell));
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->s3_cache.find(key);
    if (it != impl_->s3_cache.end()) return it->second;
    const stats::TwoPointKernel& kern = impl_->kernel(i);
    double acc = 0.0;
    for (int m = 0; m < impl_->quad.size(); ++m)
        acc += impl_->quad.weights[m] * kern.abs_moment(ell, impl_->quad.nodes[m], 3.0);
    impl_->s3_cache.emplace(key, acc);
    return acc;
}

// --- time-grid helpers --------------------------------------------------------

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (y[i - 1] + y[i]) * (t[i] - t[i - 1]);
    return out;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (y[i - 1] + y[i]) * (t[i] - t[i - 1]);
    return acc;
}

double lp_time_norm(const std::vector<double>& t, const std::vector<double>& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_time_norm: p >= 1 required");
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = std::pow(std::abs(f[i]), p);
    return std::pow(trapezoid(t, g), 1.0 / p);
}

// --- KHM balance ---------------------------------------------------------------

namespace {

std::vector<double> times_up_to(const TwoPointStats& stats, int ti) {
    std::vector<double> t(ti + 1);
    for (int i = 0; i <= ti; ++i) t[i] = stats.time(i);
    return t;
}

}  // namespace

double KhmBreakdown::max_term() const {
    return std::max(std::max(std::abs(gamma_term), std::abs(d_term)),
                    std::max(std::abs(viscous_term), std::abs(force_term)));
}

double KhmBreakdown::normalized() const {
    const double m = max_term();
    return m > 0.0 ? raw() / m : 0.0;
}

KhmBreakdown khm_residual(const TwoPointStats& stats, const TestFunctionSpec& eta, double t,
                          const KhmOptions& opts) {
    if (!eta.phi && !eta.varphi) throw std::invalid_argument("khm_residual: empty test function");
    const double lo = eta.support_lo();
    const double hi = eta.support_hi();
    if (stats.resolution() > 0.0 && lo < stats.resolution())
        throw UnresolvedSupport("test-function support reaches below the grid spacing");
    if (opts.radial_intervals < 2 || opts.radial_intervals % 2 != 0)
        throw std::invalid_argument("khm_residual: even radial interval count required");

    const int ti = stats.index_at_or_before(t);
    const std::vector<double> tgrid = times_up_to(stats, ti);
    const double nu = stats.nu();

    KhmBreakdown out;
    const int nr = opts.radial_intervals;
    const double hstep = (hi - lo) / nr;
    for (int j = 0; j <= nr; ++j) {
        const double ell = lo + hstep * j;
        const double simpson = (j == 0 || j == nr) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        const double wr = simpson * hstep / 3.0 * paper_constants::kSphereArea * ell * ell;

        const double phi = eta.phi ? eta.phi->value(ell) : 0.0;
        const double phi1 = eta.phi ? eta.phi->d1(ell) : 0.0;
        const double phi2 = eta.phi ? eta.phi->d2(ell) : 0.0;
        const double vphi = eta.varphi ? eta.varphi->value(ell) : 0.0;
        const double vphi1 = eta.varphi ? eta.varphi->d1(ell) : 0.0;
        const double vphi2 = eta.varphi ? eta.varphi->d2(ell) : 0.0;

        std::vector<double> d_series(ti + 1), visc_series(ti + 1), force_series(ti + 1);
        for (int i = 0; i <= ti; ++i) {
            const stats::StructureRecord& r = stats.at(i, ell);
            d_series[i] = phi1 * r.s_zero + vphi1 * r.s_par + (2.0 * vphi / ell) * (r.s_zero - r.s_par);
            // lap(eta) = (phi'' + 2 phi'/l + 2 vphi/l^2) I + (vphi'' + 2 vphi'/l - 6 vphi/l^2) h^ h^
            visc_series[i] = (phi2 + 2.0 * phi1 / ell + 2.0 * vphi / (ell * ell)) * r.j_val +
                             (vphi2 + 2.0 * vphi1 / ell - 6.0 * vphi / (ell * ell)) * r.g_val;
            force_series[i] = phi * r.fbar + vphi * r.ftilde;
        }
        const stats::StructureRecord& r0 = stats.at(0, ell);
        const stats::StructureRecord& rt = stats.at(ti, ell);

        out.gamma_term += wr * (phi * (rt.j_val - r0.j_val) + vphi * (rt.g_val - r0.g_val));
        out.d_term += wr * 0.5 * trapezoid(tgrid, d_series);
        out.viscous_term += wr * 2.0 * nu * trapezoid(tgrid, visc_series);
        out.force_term += wr * 2.0 * trapezoid(tgrid, force_series);
    }
    return out;
}

// --- structure-function identities ---------------------------------------------

double S0IdentityBreakdown::max_term() const {
    return std::max(std::max(std::abs(s0_term), std::abs(visc_term)),
                    std::max(std::abs(force_term), std::abs(j_term)));
}
double S0IdentityBreakdown::normalized() const {
    const double m = max_term();
    return m > 0.0 ? raw() / m : 0.0;
}

S0IdentityBreakdown s0_identity_residual(const TwoPointStats& stats, double ell, double t,
                                         const IdentityOptions& opts) {
    if (ell <= 0.0) throw std::invalid_argument("s0_identity_residual: ell > 0");
    const int ti = stats.index_at_or_before(t);
    const std::vector<double> tgrid = times_up_to(stats, ti);

    S0IdentityBreakdown out;
    std::vector<double> s0_series(ti + 1), visc_series(ti + 1);
    for (int i = 0; i <= ti; ++i) {
        const auto& r = stats.at(i, ell);
        s0_series[i] = r.s_zero;
        visc_series[i] = r.visc;
    }
    out.s0_term = trapezoid(tgrid, s0_series) / ell;
    out.visc_term = trapezoid(tgrid, visc_series);

    const TauQuadrature tq = TauQuadrature::build(ell, opts.tau_intervals);
    double facc = 0.0, jacc = 0.0;
    std::vector<double> fbar_series(ti + 1);
    for (std::size_t m = 0; m < tq.tau.size(); ++m) {
        if (tq.w[m] == 0.0) continue;
        const double tau = tq.tau[m];
        for (int i = 0; i <= ti; ++i) fbar_series[i] = stats.at(i, tau).fbar;
        facc += tq.w[m] * tau * tau * trapezoid(tgrid, fbar_series);
        jacc += tq.w[m] * tau * tau * (stats.at(ti, tau).j_val - stats.at(0, tau).j_val);
    }
    const double ell3 = ell * ell * ell;
    out.force_term = 4.0 / ell3 * facc;
    out.j_term = paper_constants::kJKernelS0 / ell3 * jacc;
    return out;
}

double SParIdentityBreakdown::max_term() const {
    double m = std::abs(s_par_term);
    m = std::max(m, std::abs(h_term));
    m = std::max(m, std::abs(s0_term));
    m = std::max(m, std::abs(force_term));
    m = std::max(m, std::abs(g_term));
    return m;
}
double SParIdentityBreakdown::normalized() const {
    const double m = max_term();
    return m > 0.0 ? raw() / m : 0.0;
}

SParIdentityBreakdown s_par_identity_residual(const TwoPointStats& stats, double ell, double t,
                                              const IdentityOptions& opts) {
    if (ell <= 0.0) throw std::invalid_argument("s_par_identity_residual: ell > 0");
    const int ti = stats.index_at_or_before(t);
    const std::vector<double> tgrid = times_up_to(stats, ti);
    const double nu = stats.nu();

    SParIdentityBreakdown out;
    std::vector<double> spar_series(ti + 1), h_series(ti + 1);
    for (int i = 0; i <= ti; ++i) {
        const auto& r = stats.at(i, ell);
        spar_series[i] = r.s_par;
        h_series[i] = r.h_val;
    }
    out.s_par_term = trapezoid(tgrid, spar_series) / ell;
    out.h_term = 4.0 * nu / ell * trapezoid(tgrid, h_series);

    const TauQuadrature tq = TauQuadrature::build(ell, opts.tau_intervals);
    double s0acc = 0.0, facc = 0.0, gacc = 0.0;
    std::vector<double> series(ti + 1);
    for (std::size_t m = 0; m < tq.tau.size(); ++m) {
        if (tq.w[m] == 0.0) continue;
        const double tau = tq.tau[m];
        const double tau3 = tau * tau * tau;
        const double tau4 = tau3 * tau;
        for (int i = 0; i <= ti; ++i) series[i] = stats.at(i, tau).s_zero;
        s0acc += tq.w[m] * tau3 * trapezoid(tgrid, series);
        for (int i = 0; i <= ti; ++i) series[i] = stats.at(i, tau).ftilde;
        facc += tq.w[m] * tau4 * trapezoid(tgrid, series);
        gacc += tq.w[m] * tau4 * (stats.at(ti, tau).g_val - stats.at(0, tau).g_val);
    }
    const double ell5 = std::pow(ell, 5);
    out.s0_term = 2.0 / ell5 * s0acc;
    out.force_term = 4.0 / ell5 * facc;
    out.g_term = paper_constants::kGKernelSpar / ell5 * gacc;
    return out;
}

// --- L^p laws -------------------------------------------------------------------

namespace {

std::vector<double> law_deviation_series(const TwoPointStats& stats, double ell, bool longitudinal) {
    const int n = stats.n_times();
    std::vector<double> t(n), s(n);
    for (int i = 0; i < n; ++i) {
        t[i] = stats.time(i);
        const auto& r = stats.at(i, ell);
        s[i] = (longitudinal ? r.s_par : r.s_zero) / ell;
    }
    std::vector<double> cum = cumulative_trapezoid(t, s);
    const double coeff =
        longitudinal ? paper_constants::kFourFifths : paper_constants::kFourThirds;
    for (int i = 0; i < n; ++i) cum[i] += coeff * stats.epsilon(i);
    return cum;
}

std::vector<double> stat_times(const TwoPointStats& stats) {
    std::vector<double> t(stats.n_times());
    for (int i = 0; i < stats.n_times(); ++i) t[i] = stats.time(i);
    return t;
}

}  // namespace

double four_thirds_residual(const TwoPointStats& stats, double ell, double p) {
    return lp_time_norm(stat_times(stats), law_deviation_series(stats, ell, false), p);
}

double four_fifths_residual(const TwoPointStats& stats, double ell, double p) {
    return lp_time_norm(stat_times(stats), law_deviation_series(stats, ell, true), p);
}

RandomTimeResidual random_time_residual(const TwoPointStats& stats, double ell, double p,
                                        const std::function<double(double)>& psi, double kappa,
                                        double k_bound) {
    if (kappa <= 0.0) throw std::invalid_argument("random_time_residual: kappa > 0");
    const std::vector<double> t = stat_times(stats);
    std::vector<double> density(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        density[i] = psi(t[i]);
        if (density[i] < -1e-12) throw BadDensity("density must be nonnegative");
    }
    const double mass = trapezoid(t, density);
    if (std::abs(mass - 1.0) > 1e-3) throw BadDensity("density must integrate to 1");
    const double lnorm = lp_time_norm(t, density, 1.0 + kappa);
    if (lnorm > k_bound * (1.0 + 1e-12))
        throw BadDensity("density violates the L^{1+kappa} bound");

    const std::vector<double> f45 = law_deviation_series(stats, ell, true);
    const std::vector<double> f43 = law_deviation_series(stats, ell, false);
    std::vector<double> w45(t.size()), w43(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        w45[i] = density[i] * std::pow(std::abs(f45[i]), p);
        w43[i] = density[i] * std::pow(std::abs(f43[i]), p);
    }
    return {trapezoid(t, w45), trapezoid(t, w43)};
}

// --- modified laws ---------------------------------------------------------------

ModifiedEpsilons modified_epsilons(const TwoPointStats& stats, double ell,
                                   const IdentityOptions& opts) {
    if (ell <= 0.0) throw std::invalid_argument("modified_epsilons: ell > 0");
    const int fin = stats.final_index();
    const double l2fin = stats.l2sq(fin);
    const double eps_fin = stats.epsilon(fin);

    // Quadratures act on the deficit against the ell -> 0 anchors
    // (J -> ||v||^2, G -> ||v||^2/3), so the tau^m moments enter exactly and
    // the Cauchy-Schwarz lower bounds survive discretization.
    const TauQuadrature tq = TauQuadrature::build(ell, opts.tau_intervals);

    auto eps_at_scale = [&](double scale, const TauQuadrature& q) {
        double acc = 0.0;
        for (std::size_t m = 0; m < q.tau.size(); ++m) {
            if (q.w[m] == 0.0) continue;
            const double tau = q.tau[m];
            acc += q.w[m] * tau * tau * (l2fin - stats.at(fin, tau).j_val);
        }
        return eps_fin + paper_constants::kEpsEllJ / (scale * scale * scale) * acc;
    };

    ModifiedEpsilons out;
    out.eps_ell = eps_at_scale(ell, tq);

    double gacc = 0.0;
    double tacc = 0.0;
    for (std::size_t m = 0; m < tq.tau.size(); ++m) {
        if (tq.w[m] == 0.0) continue;
        const double tau = tq.tau[m];
        const double tau4 = tau * tau * tau * tau;
        gacc += tq.w[m] * tau4 * (l2fin / 3.0 - stats.at(fin, tau).g_val);
        const TauQuadrature inner = TauQuadrature::build(tau, opts.tau_intervals);
        tacc += tq.w[m] * tau4 * (eps_at_scale(tau, inner) - eps_fin);
    }
    const double ell5 = std::pow(ell, 5);
    out.eps_bar_ell = eps_fin + paper_constants::kEpsBarG / ell5 * gacc;
    out.eps_tilde_ell = eps_fin + 5.0 / ell5 * tacc;
    return out;
}

ModifiedLawResiduals modified_law_residuals(const TwoPointStats& stats, double ell,
                                            const IdentityOptions& opts) {
    const ModifiedEpsilons eps = modified_epsilons(stats, ell, opts);
    const std::vector<double> t = stat_times(stats);
    const int n = stats.n_times();
    std::vector<double> s0(n), spar(n);
    for (int i = 0; i < n; ++i) {
        const auto& r = stats.at(i, ell);
        s0[i] = r.s_zero;
        spar[i] = r.s_par;
    }
    ModifiedLawResiduals out;
    out.modified_43 =
        std::abs(trapezoid(t, s0) / ell + paper_constants::kFourThirds * eps.eps_ell);
    out.modified_45 =
        std::abs(trapezoid(t, spar) / ell + paper_constants::kFourFifteenths * eps.eps_bar_ell +
                 paper_constants::kEightFifteenths * eps.eps_tilde_ell);
    return out;
}

// --- exponents and dissipation probe ----------------------------------------------

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& ell_and_integral, double alpha) {
    if (ell_and_integral.size() < 5)
        throw DegenerateData("exponent_fit: at least 5 scale samples required");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = double(ell_and_integral.size());
    for (const auto& [ell, integral] : ell_and_integral) {
        if (!(ell > 0.0)) throw DegenerateData("exponent_fit: scales must be positive");
        if (!(integral > 0.0)) throw DegenerateData("exponent_fit: nonpositive structure integral");
        const double x = std::log(ell);
        const double y = std::log(integral);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw DegenerateData("exponent_fit: degenerate scale grid");
    ExponentFit out;
    out.zeta_fit = (n * sxy - sx * sy) / denom;
    out.zeta3_lo = 3.0 * alpha;
    out.zeta3_hi = 1.0;
    return out;
}

ExponentFit exponent_fit_from_stats(const TwoPointStats& stats, const std::vector<double>& ells,
                                    double alpha) {
    const std::vector<double> t = stat_times(stats);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(ells.size());
    for (double ell : ells) {
        std::vector<double> s3(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) s3[i] = stats.s3(int(i), ell);
        pts.emplace_back(ell, t.size() > 1 ? trapezoid(t, s3) : s3.front());
    }
    return exponent_fit(pts, alpha);
}

DissipationProbe anomalous_dissipation_probe(std::vector<DissipationProbeRow> rows) {
    DissipationProbe probe;
    std::sort(rows.begin(), rows.end(),
              [](const DissipationProbeRow& a, const DissipationProbeRow& b) { return a.nu > b.nu; });
    probe.rows = std::move(rows);
    probe.decreasing_with_nu = true;
    for (std::size_t i = 1; i < probe.rows.size(); ++i)
        if (probe.rows[i].dissipation > probe.rows[i - 1].dissipation) probe.decreasing_with_nu = false;
    return probe;
}

}  // namespace khm::laws
