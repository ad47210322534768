#include "vfde/profile.hpp"

#include "vfde/barenblatt.hpp"
#include "vfde/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace vfde {

namespace {

using State = std::array<double, 2>;

struct StopShot {
    ShotOutcome outcome;
    double r;
};

double hermite(const std::vector<double>& r, const std::vector<double>& v,
               const std::vector<double>& dv, double x)
{
    if (x <= r.front()) return v.front();
    auto it = std::upper_bound(r.begin(), r.end(), x);
    if (it == r.end()) return v.back();
    const auto j = static_cast<std::size_t>(it - r.begin());
    const double h = r[j] - r[j - 1];
    const double s = (x - r[j - 1]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v[j - 1] + (s3 - 2 * s2 + s) * h * dv[j - 1] +
           (-2 * s3 + 3 * s2) * v[j] + (s3 - s2) * h * dv[j];
}

void require_asymptotic(const ModelParams& params)
{
    const auto violations = validate_params(params, true);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "profile parameters rejected:";
    for (const auto& v : violations) os << " " << v.constraint << " (" << v.detail << ")";
    throw std::invalid_argument(os.str());
}

}  // namespace

double ode_residual(double r, double v, double dv, double d2v, const ModelParams& params,
                    const Exponents& exps)
{
    const double m = params.m;
    const double wp = m * std::pow(v, m - 1.0) * dv;
    const double wpp = m * std::pow(v, m - 1.0) * d2v + m * (m - 1.0) * std::pow(v, m - 2.0) * dv * dv;
    return diffusion_coefficient(params.n, m) * (wpp + (params.n - 1) / r * wp) + exps.alpha * v +
           exps.beta * r * dv;
}

double series_coefficient(double lambda, const ModelParams& params, const Exponents& exps)
{
    return -exps.alpha * std::pow(lambda, 2.0 - params.m) / (2.0 * params.n * (params.n - 1));
}

ShotCurve shoot(double lambda, double r_max, const ModelParams& params, const Exponents& exps,
                double tol, std::size_t samples)
{
    namespace ode = boost::numeric::odeint;
    if (!(lambda > 0.0)) throw std::invalid_argument("shoot: lambda must be positive");
    if (!(r_max > 0.0) || samples < 3) throw std::invalid_argument("shoot: bad radial span");
    if (std::abs(exps.alpha - params.q * exps.beta) > 1e-12 * std::max(1.0, exps.alpha))
        throw std::invalid_argument("shoot: exponents violate alpha = q beta");

    const int n = params.n;
    const double m = params.m;
    const double kappa = diffusion_coefficient(n, m);
    const double c = series_coefficient(lambda, params, exps);
    const double r_s = 1e-4 * r_max;

    ShotCurve curve;
    curve.lambda = lambda;
    curve.r_end = r_max;
    const double h = r_max / static_cast<double>(samples - 1);
    std::vector<double> times{r_s};
    for (std::size_t j = 0; j < samples; ++j) {
        const double r = j + 1 == samples ? r_max : h * static_cast<double>(j);
        if (r <= r_s) {
            curve.r.push_back(r);
            curve.v.push_back(lambda + c * r * r);
            curve.dv.push_back(2.0 * c * r);
        } else {
            times.push_back(r);
        }
    }

    const auto slope = [&](double r, const State& x) {
        return x[1] * std::pow(std::max(x[0], 0.0), 1.0 - m) / (m * std::pow(r, n - 1));
    };
    const auto system = [&](const State& x, State& dxdr, double r) {
        const double dv = slope(r, x);
        dxdr[0] = dv;
        dxdr[1] = -std::pow(r, n - 1) * (exps.alpha * x[0] + exps.beta * r * dv) / kappa;
    };
    bool at_start = true;
    const auto observer = [&](const State& x, double r) {
        if (std::exchange(at_start, false)) return;
        if (!(x[0] > 0.0)) throw StopShot{ShotOutcome::Undershoot, r};
        const double dv = slope(r, x);
        if (dv > 0.0 && x[0] > 2.0 * lambda) throw StopShot{ShotOutcome::Overshoot, r};
        curve.r.push_back(r);
        curve.v.push_back(x[0]);
        curve.dv.push_back(dv);
    };

    const double v_s = lambda + c * r_s * r_s;
    State x{v_s, std::pow(r_s, n - 1) * m * std::pow(v_s, m - 1.0) * 2.0 * c * r_s};
    auto stepper = ode::make_dense_output(tol * 1e-3 * lambda, tol, ode::runge_kutta_dopri5<State>());
    try {
        ode::integrate_times(stepper, system, x, times.begin(), times.end(), 1e-3 * r_s, observer);
    } catch (const StopShot& stop) {
        curve.outcome = stop.outcome;
        curve.r_end = stop.r;
    }
    return curve;
}

AmplitudeEstimate far_field_amplitude(const ShotCurve& curve, double q, double beta)
{
    if (curve.outcome != ShotOutcome::Reached)
        throw Undershoot("far_field_amplitude: curve stopped early at r = " +
                         std::to_string(curve.r_end));
    const double R = curve.r.back();
    const double a_full = std::pow(R, q) * curve.v.back();
    const double a_half = std::pow(R / 2, q) * hermite(curve.r, curve.v, curve.dv, R / 2);
    const double f = std::pow(2.0, 1.0 / beta);
    const double A = (f * a_full - a_half) / (f - 1.0);
    return {A, std::abs(A - a_full)};
}

Profile::Profile(ModelParams params, Exponents exps, ShotCurve curve, AmplitudeEstimate amplitude)
    : params_(params), exps_(exps), curve_(std::move(curve)), amplitude_(amplitude)
{
    if (curve_.r.size() < 2 || curve_.r.size() != curve_.v.size() || curve_.v.size() != curve_.dv.size())
        throw std::invalid_argument("Profile: inconsistent samples");
    for (double v : curve_.v)
        if (!(v > 0.0)) throw std::invalid_argument("Profile: values must be positive");
}

double Profile::operator()(double r) const
{
    if (r < 0.0) throw std::invalid_argument("Profile: negative radius");
    if (r > r_max() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "Profile: radius " << r << " beyond r_max " << r_max();
        throw DomainExceeded(os.str());
    }
    return hermite(curve_.r, curve_.v, curve_.dv, r);
}

Profile solve_profile(double A_target, const ModelParams& params, const ProfileConfig& cfg)
{
    if (!(A_target > 0.0)) throw std::invalid_argument("solve_profile: A_target must be positive");
    require_asymptotic(params);
    const Exponents exps = compute_exponents(params.q, params.m);
    const double r_max = cfg.r_max > 0.0 ? cfg.r_max : 50.0 / exps.beta;

    // λ -> measured amplitude; undershoot and overshoot count as -inf / +inf
    std::map<double, double> seen;
    ShotCurve best;
    double best_gap = std::numeric_limits<double>::infinity();
    AmplitudeEstimate best_amp;

    const auto amplitude = [&](double lambda) {
        auto curve = shoot(lambda, r_max, params, exps, cfg.tol, cfg.samples);
        double a = 0.0;
        AmplitudeEstimate est;
        switch (curve.outcome) {
        case ShotOutcome::Undershoot: a = -std::numeric_limits<double>::infinity(); break;
        case ShotOutcome::Overshoot: a = std::numeric_limits<double>::infinity(); break;
        case ShotOutcome::Reached:
            est = far_field_amplitude(curve, params.q, exps.beta);
            a = est.A;
            break;
        }
        seen[lambda] = a;
        double prev = -std::numeric_limits<double>::infinity();
        for (const auto& [l, v] : seen) {
            if (v < prev || (v == prev && std::isfinite(v))) {
                std::ostringstream os;
                os << "solve_profile: amplitude is not increasing in lambda near lambda = " << l;
                throw NonMonotoneShooting(os.str());
            }
            prev = v;
        }
        if (std::isfinite(a) && std::abs(a - A_target) < best_gap) {
            best_gap = std::abs(a - A_target);
            best = std::move(curve);
            best_amp = est;
        }
        return a;
    };

    double lo = 1.0, hi = 1.0;
    if (amplitude(1.0) < A_target) {
        int k = 0;
        while (amplitude(hi *= 2.0) < A_target)
            if (++k >= cfg.max_doublings) throw NoBracket("solve_profile: no upper bracket for lambda");
        lo = hi / 2.0;
    } else {
        int k = 0;
        while (amplitude(lo /= 2.0) >= A_target)
            if (++k >= cfg.max_doublings) throw NoBracket("solve_profile: no lower bracket for lambda");
        hi = lo * 2.0;
    }

    for (int it = 0; it < cfg.max_bisections && best_gap >= cfg.amplitude_tol * A_target; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (amplitude(mid) < A_target)
            lo = mid;
        else
            hi = mid;
    }
    if (best_gap >= cfg.amplitude_tol * A_target)
        throw NoBracket("solve_profile: bisection did not reach the amplitude tolerance");
    return Profile(params, exps, std::move(best), best_amp);
}

double psi(double r, double t, const Profile& profile)
{
    if (!(t > 0.0)) throw std::invalid_argument("psi: t must be positive");
    const auto& e = profile.exponents();
    return std::pow(t, -e.alpha) * profile(std::pow(t, -e.beta) * r);
}

SandwichReport sandwich_check(const Profile& profile, double A, const ModelParams& params,
                              double tol)
{
    SandwichReport report;
    const auto& r = profile.radii();
    const auto& v = profile.values();

    report.upper_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (!(r[j] > 0.0)) continue;
        report.upper_margin =
            std::min(report.upper_margin, A * std::pow(r[j], -params.q) * (1.0 + tol) / v[j] - 1.0);
    }
    report.upper_ok = report.upper_margin >= 0.0;

    const auto cc = comparison_constants(A, params.q, params.n, params.m);
    const BarenblattSpec spec{cc.k, cc.T};
    const double t = cc.T > 1.0 ? 1.0 : cc.T / 2.0;
    const auto& e = profile.exponents();
    report.lower_time = t;
    report.lower_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double x = std::pow(t, e.beta) * r[j];
        const double lower = barenblatt(x, t, spec, params.n, params.m) * (1.0 - tol);
        if (!(lower > 0.0)) continue;
        const double value = std::pow(t, -e.alpha) * v[j];
        report.lower_margin = std::min(report.lower_margin, value / lower - 1.0);
        ++report.lower_samples;
    }
    report.lower_ok = report.lower_samples > 0 && report.lower_margin >= 0.0;
    return report;
}

}  // namespace vfde
