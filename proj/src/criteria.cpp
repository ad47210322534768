#include "vfde/criteria.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// ∫_0^R f r^{n-1} dr, split at decades so the adaptive rule sees each scale
template <class F>
double radial_integral(F&& f, double R, int n)
{
    using boost::math::quadrature::gauss_kronrod;
    const auto integrand = [&](double r) { return f(r) * std::pow(r, n - 1); };
    double sum = 0.0;
    double a = 0.0;
    double b = std::min(R, 1.0);
    while (a < R) {
        sum += gauss_kronrod<double, 61>::integrate(integrand, a, b, 20, 1e-12);
        a = b;
        b = std::min(R, 10.0 * b);
    }
    return sum;
}

// ∫_0^R of the piecewise-linear table times r^{n-1}
double table_moment(const Table& t, double R, int n)
{
    if (t.r.empty()) return 0.0;
    const auto moment = [n](double a, double b, double fa, double fb) {
        if (b <= a) return 0.0;
        const double c1 = (fb - fa) / (b - a);
        const double c0 = fa - c1 * a;
        return c0 * (std::pow(b, n) - std::pow(a, n)) / n +
               c1 * (std::pow(b, n + 1) - std::pow(a, n + 1)) / (n + 1);
    };
    double sum = moment(0.0, std::min(R, t.r.front()), t.values.front(), t.values.front());
    for (std::size_t i = 1; i < t.r.size() && t.r[i - 1] < R; ++i) {
        const double b = std::min(R, t.r[i]);
        sum += moment(t.r[i - 1], b, t.values[i - 1], t(b));
    }
    return sum;
}

void require_growth_regime(const ModelParams& params, double R, const char* who)
{
    if (!(R > 0.0)) {
        std::ostringstream os;
        os << who << ": R must be positive";
        throw std::invalid_argument(os.str());
    }
    if (growth_exponent(params.n, params.m) < -1e-12) {
        std::ostringstream os;
        os << who << ": requires m <= (n-2)/n";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double ball_mass(const InitialData& data, double R, int n)
{
    if (!(R >= 0.0)) throw std::invalid_argument("ball_mass: R must be >= 0");
    if (R == 0.0) return 0.0;
    const double moment = std::visit(
        overloaded{
            [&](const PowerLaw& p) {
                if (!(p.q < n)) return std::numeric_limits<double>::infinity();
                return p.A * std::pow(R, n - p.q) / (n - p.q);
            },
            [&](const BarenblattSlice&) {
                return radial_integral([&](double r) { return evaluate(data, r, n); }, R, n);
            },
            [&](const Composite& c) {
                return ball_mass(*c.base, R, n) / sphere_area(n) + table_moment(c.perturbation, R, n);
            },
            [&](const Tabulated& t) {
                const auto& g = t.field.grid();
                const auto f = g.faces();
                double sum = 0.0;
                for (std::size_t i = 0; i < g.size() && f[i] < R; ++i)
                    sum += t.field[i] * (std::pow(std::min(R, f[i + 1]), n) - std::pow(f[i], n)) / n;
                return sum;
            },
        },
        data.form);
    return sphere_area(n) * moment;
}

double growth_average(const InitialData& data, double R, const ModelParams& params)
{
    require_growth_regime(params, R, "growth_average");
    return ball_mass(data, R, params.n) / std::pow(R, growth_exponent(params.n, params.m));
}

std::string to_string(GrowthTrend trend)
{
    switch (trend) {
    case GrowthTrend::Diverging: return "diverging";
    case GrowthTrend::Bounded: return "bounded";
    case GrowthTrend::Vanishing: return "vanishing";
    case GrowthTrend::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

GrowthReport growth_criterion_report(const InitialData& data, const ModelParams& params,
                                     const std::vector<double>& radii, std::optional<double> T,
                                     std::optional<double> C1)
{
    if (radii.size() < 3) throw std::invalid_argument("growth_criterion_report: need >= 3 radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("growth_criterion_report: radii must increase");
    if (T.has_value() != C1.has_value())
        throw std::invalid_argument("growth_criterion_report: T and C1 go together");
    if (C1 && !(*C1 > 0.0 && *T > 0.0))
        throw std::invalid_argument("growth_criterion_report: T and C1 must be positive");

    GrowthReport report;
    report.radii = radii;
    for (double R : radii) report.averages.push_back(growth_average(data, R, params));

    const std::size_t first = radii.size() / 2;
    report.liminf_estimate = *std::min_element(report.averages.begin() + first, report.averages.end());
    const bool all_zero = std::all_of(report.averages.begin(), report.averages.end(),
                                      [](double g) { return g == 0.0; });
    if (all_zero) {
        report.trend = GrowthTrend::Vanishing;
        report.tail_slope = -std::numeric_limits<double>::infinity();
    } else if (report.liminf_estimate > 0.0 && std::isfinite(report.averages.back())) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double count = 0;
        for (std::size_t i = first; i < radii.size(); ++i) {
            const double x = std::log(radii[i]);
            const double y = std::log(report.averages[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        report.tail_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        if (report.tail_slope > 0.05)
            report.trend = GrowthTrend::Diverging;
        else if (report.tail_slope < -0.05)
            report.trend = GrowthTrend::Vanishing;
        else
            report.trend = GrowthTrend::Bounded;
    } else if (!std::isfinite(report.averages.back())) {
        report.trend = GrowthTrend::Diverging;
        report.tail_slope = std::numeric_limits<double>::infinity();
    }

    if (C1) {
        report.threshold = *C1 * std::pow(*T, 1.0 / (1.0 - params.m));
        report.meets_threshold = report.liminf_estimate >= *report.threshold;
    }
    return report;
}

double extinction_lower_bound(const InitialData& data, double R, const ModelParams& params,
                              double C2)
{
    if (!(C2 > 0.0)) throw std::invalid_argument("extinction_lower_bound: C2 must be supplied and > 0");
    if (!(R > 0.0)) throw std::invalid_argument("extinction_lower_bound: R must be positive");
    const int n = params.n;
    const double shell = sphere_area(n) * (std::pow(3.0, n) - std::pow(2.0, n)) * std::pow(R, n) / n;
    return C2 * R * R * std::pow(ball_mass(data, R, n) / shell, 1.0 - params.m);
}

WeakFormResidual weak_form_residual(const Trajectory& traj, const TestFunction& eta, double t1,
                                    double t2)
{
    if (!eta.value || !eta.laplacian || !eta.dt || !eta.normal)
        throw std::invalid_argument("weak_form_residual: test function is incomplete");
    if (!(t2 > t1)) throw std::invalid_argument("weak_form_residual: need t1 < t2");
    const auto index_of = [&](double t) {
        const std::size_t k = traj.nearest(t);
        if (std::abs(traj.times[k] - t) > 1e-12 * std::max(1.0, std::abs(t)))
            throw std::invalid_argument("weak_form_residual: t1 and t2 must be sample times");
        return k;
    };
    const std::size_t k1 = index_of(t1);
    const std::size_t k2 = index_of(t2);

    const auto& g = traj.grid();
    const int n = g.dimension();
    const double R = g.r_max();
    const double kappa = diffusion_coefficient(n, traj.m);
    const double omega = sphere_area(n);
    const auto centers = g.centers();

    for (std::size_t k = k1; k <= k2; ++k) {
        double scale = 0.0;
        for (double c : centers) scale = std::max(scale, std::abs(eta.value(c, traj.times[k])));
        if (std::abs(eta.value(R, traj.times[k])) > 1e-10 * std::max(scale, 1.0))
            throw std::invalid_argument("weak_form_residual: test function must vanish at r_max");
    }

    const auto bulk = [&](std::size_t k) {
        const double t = traj.times[k];
        const auto& u = traj.fields[k];
        double sum = 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i)
            sum += (kappa * std::pow(u[i], traj.m) * eta.laplacian(centers[i], t) +
                    u[i] * eta.dt(centers[i], t)) * g.cell_volume(i);
        return omega * sum;
    };
    const auto flux = [&](std::size_t k) {
        const double t = traj.times[k];
        const double gb = boundary_value(traj.bc, t) + traj.config.eps_floor;
        return kappa * std::pow(gb, traj.m) * eta.normal(R, t) * omega * std::pow(R, n - 1);
    };
    const auto weighted_mass = [&](std::size_t k) {
        const double t = traj.times[k];
        double sum = 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i)
            sum += traj.fields[k][i] * eta.value(centers[i], t) * g.cell_volume(i);
        return omega * sum;
    };

    WeakFormResidual out;
    double boundary = 0.0;
    for (std::size_t k = k1; k < k2; ++k) {
        const double h = traj.times[k + 1] - traj.times[k];
        out.lhs += 0.5 * h * (bulk(k) + bulk(k + 1));
        boundary += 0.5 * h * (flux(k) + flux(k + 1));
    }
    out.rhs = boundary + weighted_mass(k2) - weighted_mass(k1);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

double positivity_floor(const Trajectory& traj, double delta, double R, double t1, double t2)
{
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("positivity_floor: need 0 < delta < 1");
    if (!(R > 0.0) || R > traj.grid().r_max())
        throw std::invalid_argument("positivity_floor: need 0 < R <= r_max");
    if (!(t2 >= t1)) throw std::invalid_argument("positivity_floor: need t1 <= t2");
    const double radius = delta * R;
    const auto centers = traj.grid().centers();
    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < t1 || traj.times[k] > t2) continue;
        for (std::size_t i = 0; i < centers.size() && centers[i] <= radius; ++i)
            floor = std::min(floor, traj.fields[k][i]);
    }
    if (!std::isfinite(floor))
        throw std::invalid_argument("positivity_floor: no samples in the requested cylinder");
    return floor;
}

}  // namespace vfde
