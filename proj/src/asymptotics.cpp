#include "vfde/asymptotics.hpp"

#include "vfde/errors.hpp"
#include "vfde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Table rescale_table(const Table& table, double gamma, double q)
{
    Table out = table;
    for (double& r : out.r) r /= gamma;
    for (double& v : out.values) v *= std::pow(gamma, q);
    return out;
}

template <class Value>
double sup_distance(const RadialField& a, Value&& b, double R, std::size_t samples)
{
    if (!(R > 0.0) || samples < 2) throw std::invalid_argument("compact_sup_distance: bad arguments");
    if (R > a.grid().r_max() * (1.0 + 1e-12))
        throw DomainExceeded("compact_sup_distance: R exceeds the field's domain");
    double worst = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
        const double r = std::min(R * static_cast<double>(j) / (samples - 1), a.grid().r_max());
        worst = std::max(worst, std::abs(interpolate(a, r) - b(r)));
    }
    return worst;
}

}  // namespace

RadialField rescale_solution(const Trajectory& traj, double t, const Exponents& exps,
                             const GridPtr& target)
{
    if (!target) throw std::invalid_argument("rescale_solution: null target grid");
    if (traj.size() == 0) throw std::invalid_argument("rescale_solution: empty trajectory");
    if (!(t > 0.0) || t < traj.times.front() || t > traj.times.back()) {
        std::ostringstream os;
        os << "rescale_solution: t = " << t << " outside the sampled range";
        throw std::out_of_range(os.str());
    }
    const double stretch = std::pow(t, exps.beta);
    if (stretch * target->r_max() > traj.grid().r_max() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "rescale_solution: rescaled radius " << stretch * target->r_max()
           << " exceeds the solver domain " << traj.grid().r_max();
        throw DomainExceeded(os.str());
    }

    const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - traj.times.begin());
    std::size_t lo = hi;
    double s = 0.0;
    if (traj.times[hi] != t) {
        lo = hi - 1;
        s = (t - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
    }

    const double amp = std::pow(t, exps.alpha);
    const auto rho = target->centers();
    std::vector<double> values(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double r = std::min(stretch * rho[i], traj.grid().r_max());
        const double u = (1.0 - s) * interpolate(traj.fields[lo], r) +
                         (s > 0.0 ? s * interpolate(traj.fields[hi], r) : 0.0);
        values[i] = amp * u;
    }
    return RadialField(target, std::move(values));
}

InitialData rescale_initial(const InitialData& data, double gamma, double q)
{
    if (!(gamma >= 1.0)) throw std::invalid_argument("rescale_initial: gamma must be >= 1");
    return std::visit(
        overloaded{
            [&](const PowerLaw& p) {
                return InitialData{PowerLaw{p.A * std::pow(gamma, q - p.q), p.q}};
            },
            [&](const BarenblattSlice& b) {
                BarenblattSlice out = b;
                out.spec.k = b.spec.k / (gamma * gamma);
                out.scale = b.scale * std::pow(gamma, q - 2.0 / (1.0 - b.m));
                return InitialData{out};
            },
            [&](const Composite& c) {
                return make_composite(rescale_initial(*c.base, gamma, q),
                                      rescale_table(c.perturbation, gamma, q));
            },
            [&](const Tabulated& t) {
                const auto& g = t.field.grid();
                std::vector<double> faces(g.faces().begin(), g.faces().end());
                for (double& f : faces) f /= gamma;
                std::vector<double> values(t.field.values().begin(), t.field.values().end());
                for (double& v : values) v *= std::pow(gamma, q);
                return InitialData{
                    Tabulated{RadialField(share(RadialGrid(g.dimension(), std::move(faces))),
                                          std::move(values))}};
            },
        },
        data.form);
}

double compact_sup_distance(const RadialField& a, const RadialField& b, double R,
                            std::size_t samples)
{
    if (R > b.grid().r_max() * (1.0 + 1e-12))
        throw DomainExceeded("compact_sup_distance: R exceeds the field's domain");
    const double rb = b.grid().r_max();
    return sup_distance(a, [&](double r) { return interpolate(b, std::min(r, rb)); }, R, samples);
}

double compact_sup_distance(const RadialField& a, const Profile& b, double R, std::size_t samples)
{
    if (R > b.r_max()) throw DomainExceeded("compact_sup_distance: R exceeds the profile's range");
    return sup_distance(a, [&](double r) { return b(r); }, R, samples);
}

double psi_extended(double r, double t, const Profile& profile)
{
    if (!(t > 0.0)) throw std::invalid_argument("psi_extended: t must be positive");
    const auto& e = profile.exponents();
    const auto& p = profile.params();
    const double rho = std::pow(t, -e.beta) * r;
    if (rho <= profile.r_max()) return psi(r, t, profile);
    const double A = profile.A_achieved();
    const double b = (p.n - 1) * std::pow(A, p.m) * p.q * (p.q * p.m + 2 - p.n);
    return std::pow(t, -e.alpha) * std::pow(rho, -p.q) * (A + b * std::pow(rho, -1.0 / e.beta));
}

TimeVaryingBoundary self_similar_boundary(const Profile& profile, double r_max)
{
    if (!(r_max > 0.0)) throw std::invalid_argument("self_similar_boundary: r_max must be > 0");
    // copy: the boundary may outlive the caller's profile
    auto g = [profile, r_max](double t) {
        return t > 0.0 ? psi_extended(r_max, t, profile)
                       : profile.A_achieved() * std::pow(r_max, -profile.params().q);
    };
    return TimeVaryingBoundary{std::move(g), "self-similar"};
}

ConvergenceReport convergence_study(const InitialData& data, const ModelParams& params,
                                    const std::vector<double>& times, double R,
                                    const Profile& profile, const ConvergenceSetup& setup)
{
    if (!setup.grid) throw std::invalid_argument("convergence_study: null grid");
    if (times.empty() || !(R > 0.0)) throw std::invalid_argument("convergence_study: bad arguments");
    for (std::size_t k = 0; k < times.size(); ++k)
        if (!(times[k] > 0.0) || (k > 0 && !(times[k] > times[k - 1])))
            throw std::invalid_argument("convergence_study: times must be positive and increasing");

    const Exponents exps = compute_exponents(params.q, params.m);
    const double reach = std::pow(times.back(), exps.beta) * R;
    if (reach > setup.grid->r_max()) {
        std::ostringstream os;
        os << "convergence_study: t^beta R = " << reach << " exceeds the solver domain "
           << setup.grid->r_max();
        throw DomainExceeded(os.str());
    }

    SolverConfig cfg = setup.solver;
    cfg.sample_times = times;
    const auto traj =
        solve(sample_initial(data, setup.grid), setup.bc, times.back(), cfg, params.n, params.m);

    ConvergenceReport report;
    report.R = R;
    report.lambda = profile.lambda();
    report.A = profile.A_achieved();
    report.times = times;
    const auto target = share(RadialGrid::uniform(params.n, setup.target_cells, R));
    for (double t : times) {
        const auto v = rescale_solution(traj, t, exps, target);
        report.distances.push_back(compact_sup_distance(v, profile, R));
    }

    const double window = times.back() / 10.0;
    while (report.tail_start + 1 < times.size() && times[report.tail_start] < window * (1 - 1e-12))
        ++report.tail_start;
    const double first = report.distances[report.tail_start];
    report.tail_ratio = first > 0.0 ? report.distances.back() / first : 0.0;
    report.tail_monotone = true;
    for (std::size_t k = report.tail_start + 1; k < times.size(); ++k)
        if (report.distances[k] > 1.01 * report.distances[k - 1]) report.tail_monotone = false;
    return report;
}

double l1_distance_on_ball(const RadialField& a, const RadialField& b, double R1)
{
    const auto& g = a.grid();
    if (b.size() != a.size() || b.grid().r_max() != g.r_max())
        throw std::invalid_argument("l1_distance_on_ball: fields live on different grids");
    const auto faces = g.faces();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size() && faces[i + 1] <= R1 * (1.0 + 1e-12); ++i)
        sum += std::abs(a[i] - b[i]) * g.cell_volume(i);
    return sphere_area(g.dimension()) * sum;
}

L1Report l1_difference_check(const InitialData& data_a, const InitialData& data_b,
                             const ModelParams& params, const std::vector<double>& times,
                             double R1, const GridPtr& grid, const BoundaryCondition& bc,
                             const SolverConfig& cfg)
{
    if (!grid) throw std::invalid_argument("l1_difference_check: null grid");
    if (times.size() < 3) throw std::invalid_argument("l1_difference_check: need >= 3 times");
    if (2.0 * R1 > grid->r_max())
        throw DomainExceeded("l1_difference_check: domain must contain B_{2 R1}");

    SolverConfig c = cfg;
    c.sample_times = times;
    const auto a = solve(sample_initial(data_a, grid), bc, times.back(), c, params.n, params.m);
    const auto b = solve(sample_initial(data_b, grid), bc, times.back(), c, params.n, params.m);

    L1Report report;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!(a.times[k] > 0.0)) continue;
        report.times.push_back(a.times[k]);
        report.D.push_back(l1_distance_on_ball(a.fields[k], b.fields[k], R1));
    }
    report.D0 = report.D.front();

    const double e = 1.0 - params.m;
    std::vector<double> y;
    for (double d : report.D) y.push_back(std::pow(d, e) - std::pow(report.D0, e));
    const auto N = static_cast<double>(y.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double t = report.times[k];
        st += t;
        sy += y[k];
        stt += t * t;
        sty += t * y[k];
    }
    report.slope = (N * sty - st * sy) / (N * stt - st * st);
    report.intercept = (sy - report.slope * st) / N;
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        worst = std::max(worst, std::abs(y[k] - report.intercept - report.slope * report.times[k]));
        scale = std::max(scale, std::abs(y[k]));
    }
    report.residual = scale > 0.0 ? worst / scale : 0.0;
    return report;
}

}  // namespace vfde
