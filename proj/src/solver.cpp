#include "vfde/solver.hpp"

#include "vfde/errors.hpp"
#include "vfde/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

struct StepResult {
    std::vector<double> u;
    int iterations = 0;
    double residual = 0.0;
};

/// Solves V_i (a0 u_i - rhs_i)/dt = κ (F_{i+1} - F_i) for u.
class ImplicitStep {
public:
    ImplicitStep(const RadialGrid& grid, const SolverConfig& cfg, int n, double m)
        : grid_(grid), cfg_(cfg), m_(m), kappa_(diffusion_coefficient(n, m))
    {
        const auto f = grid.faces();
        const auto c = grid.centers();
        const std::size_t N = grid.size();
        trans_.assign(N + 1, 0.0);
        for (std::size_t i = 1; i < N; ++i) trans_[i] = std::pow(f[i], n - 1) / (c[i] - c[i - 1]);
        trans_[N] = std::pow(f[N], n - 1) / (f[N] - c[N - 1]);
    }

    StepResult run(std::span<const double> guess, double a0, std::span<const double> rhs, double dt,
                   double g_boundary) const
    {
        const std::size_t N = grid_.size();
        const double inv_m = 1.0 / m_;
        std::vector<double> w(N), u(N), res(N), lo(N), di(N), up(N), delta(N);
        for (std::size_t i = 0; i < N; ++i) w[i] = std::pow(guess[i], m_);
        const double wb = std::pow(g_boundary, m_);

        // Newton runs on w = u^m: the residual is convex in w with an M-matrix Jacobian,
        // so after the first step the iterates decrease monotonically to the root.
        bool small_step = false;
        for (int it = 0; it <= cfg_.newton_max; ++it) {
            double scale = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                u[i] = std::pow(std::max(w[i], 0.0), inv_m);
                scale = std::max(scale, u[i]);
            }
            residual(u, w, a0, rhs, dt, wb, res);
            double r = 0.0;
            for (std::size_t i = 0; i < N; ++i)
                r = std::max(r, std::abs(res[i]) * dt / (a0 * grid_.cell_volume(i)));
            const double tol = cfg_.newton_tol * std::max(scale, 1e-300);
            if (it > 0 && (small_step || r <= tol)) return {std::move(u), it, r};
            if (it == cfg_.newton_max) break;

            for (std::size_t i = 0; i < N; ++i) {
                const double du_dw = w[i] > 0.0 ? inv_m * u[i] / w[i] : 0.0;
                di[i] = grid_.cell_volume(i) * a0 / dt * du_dw + kappa_ * (trans_[i] + trans_[i + 1]);
                lo[i] = i > 0 ? -kappa_ * trans_[i] : 0.0;
                up[i] = i + 1 < N ? -kappa_ * trans_[i + 1] : 0.0;
                delta[i] = -res[i];
            }
            thomas(lo, di, up, delta);

            double change = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double next = w[i] + delta[i];
                if (!std::isfinite(next)) throw NewtonDivergence("Newton produced a non-finite iterate");
                change = std::max(change, std::abs(std::pow(std::max(next, 0.0), inv_m) - u[i]));
                w[i] = next;
            }
            small_step = change <= tol;
        }
        std::ostringstream os;
        os << "Newton did not converge in " << cfg_.newton_max << " iterations (dt = " << dt << ")";
        throw NewtonDivergence(os.str());
    }

private:
    void residual(std::span<const double> u, std::span<const double> w, double a0,
                  std::span<const double> rhs, double dt, double wb, std::vector<double>& res) const
    {
        const std::size_t N = u.size();
        double flux_lo = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double flux_hi =
                i + 1 < N ? trans_[i + 1] * (w[i + 1] - w[i]) : trans_[N] * (wb - w[i]);
            res[i] = grid_.cell_volume(i) * (a0 * u[i] - rhs[i]) / dt - kappa_ * (flux_hi - flux_lo);
            flux_lo = flux_hi;
        }
    }

    static void thomas(std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up,
                       std::vector<double>& x)
    {
        const std::size_t N = x.size();
        for (std::size_t i = 1; i < N; ++i) {
            const double f = lo[i] / di[i - 1];
            di[i] -= f * up[i - 1];
            x[i] -= f * x[i - 1];
        }
        x[N - 1] /= di[N - 1];
        for (std::size_t i = N - 1; i-- > 0;) x[i] = (x[i] - up[i] * x[i + 1]) / di[i];
    }

    const RadialGrid& grid_;
    const SolverConfig& cfg_;
    double m_;
    double kappa_;
    std::vector<double> trans_;
};

void finalize(std::vector<double>& u, double floor)
{
    double scale = 0.0;
    for (double v : u) scale = std::max(scale, std::abs(v));
    for (double& v : u) {
        if (v < floor - 1e-6 * std::max(scale, floor)) {
            std::ostringstream os;
            os << "state " << v << " below the admissible floor " << floor;
            throw NonphysicalState(os.str());
        }
        v = std::max(v, floor);
    }
}

void require_model(const RadialField& field, int n, double m)
{
    if (field.grid().dimension() != n)
        throw std::invalid_argument("solver: grid dimension does not match n");
    if (!(m > 0.0) || !(m < 1.0)) throw std::invalid_argument("solver: need 0 < m < 1");
}

}  // namespace

RadialField advance(const RadialField& field, double dt, const BoundaryCondition& bc,
                    const SolverConfig& cfg, int n, double m, double t_old)
{
    validate(cfg);
    validate(bc);
    require_model(field, n, m);
    if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
    const ImplicitStep step(field.grid(), cfg, n, m);
    const double g = boundary_value(bc, t_old + dt) + cfg.eps_floor;
    auto result = step.run(field.values(), 1.0, field.values(), dt, g);
    finalize(result.u, cfg.eps_floor);
    return RadialField(field.grid_ptr(), std::move(result.u));
}

Trajectory solve(const RadialField& u0, const BoundaryCondition& bc, double t_end,
                 const SolverConfig& cfg, int n, double m)
{
    validate(cfg);
    validate(bc);
    require_model(u0, n, m);
    if (!(t_end > 0.0)) throw std::invalid_argument("solve: t_end must be positive");

    Trajectory traj;
    traj.n = n;
    traj.m = m;
    traj.bc = bc;
    traj.config = cfg;

    std::vector<double> u(u0.values().begin(), u0.values().end());
    for (double& v : u) v += cfg.eps_floor;
    traj.times.push_back(0.0);
    traj.fields.emplace_back(u0.grid_ptr(), u);

    std::vector<double> targets;
    for (double s : cfg.sample_times)
        if (s < t_end) targets.push_back(s);
    targets.push_back(t_end);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    const ImplicitStep step(u0.grid(), cfg, n, m);
    const std::size_t N = u.size();
    std::vector<double> prev, rhs(N);
    double dt_prev = 0.0;
    double t = 0.0;
    double dt_nominal = std::min(cfg.dt_init, t_end);

    for (double target : targets) {
        while (target - t > 1e-14 * t_end) {
            const double remaining = target - t;
            const double count = std::ceil(remaining / dt_nominal - 1e-9);
            const double dt = count <= 1.0 ? remaining : remaining / count;

            double a0 = 1.0;
            std::copy(u.begin(), u.end(), rhs.begin());
            if (cfg.scheme == TimeScheme::Bdf2 && !prev.empty() && dt <= 2.0 * dt_prev) {
                const double w = dt / dt_prev;
                a0 = (1.0 + 2.0 * w) / (1.0 + w);
                for (std::size_t i = 0; i < N; ++i)
                    rhs[i] = (1.0 + w) * u[i] - w * w / (1.0 + w) * prev[i];
            }

            StepResult result;
            try {
                result = step.run(u, a0, rhs, dt, boundary_value(bc, t + dt) + cfg.eps_floor);
            } catch (const NewtonDivergence& e) {
                ++traj.rejected_steps;
                dt_nominal = 0.5 * dt;
                if (dt_nominal < 1e-14 * t_end) {
                    std::ostringstream os;
                    os << "time step underflow at t = " << t << ": " << e.what();
                    throw NewtonDivergence(os.str());
                }
                continue;
            }
            finalize(result.u, cfg.eps_floor);

            prev.swap(u);
            u = std::move(result.u);
            dt_prev = dt;
            t = count <= 1.0 ? target : t + dt;

            const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
            traj.steps.push_back({t, dt, result.iterations, result.residual, *lo, *hi});
            dt_nominal = std::min(dt_nominal * cfg.dt_growth, cfg.dt_max);
        }
        traj.times.push_back(target);
        traj.fields.emplace_back(u0.grid_ptr(), u);
    }
    return traj;
}

std::vector<Trajectory> solve_epsilon_family(const RadialField& u0, double cut_radius,
                                             std::span<const double> eps_list, double t_end,
                                             const SolverConfig& cfg, int n, double m)
{
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw std::invalid_argument("solve_epsilon_family: ε must be > 0");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("solve_epsilon_family: ε list must strictly decrease");
    }
    if (!(cut_radius > 0.0)) throw std::invalid_argument("solve_epsilon_family: cut radius must be > 0");

    const auto centers = u0.grid().centers();
    std::vector<double> cut(u0.values().begin(), u0.values().end());
    for (std::size_t i = 0; i < cut.size(); ++i)
        if (centers[i] > cut_radius) cut[i] = 0.0;
    const RadialField data(u0.grid_ptr(), std::move(cut));

    std::vector<Trajectory> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        SolverConfig c = cfg;
        c.eps_floor = eps;
        out.push_back(solve(data, ZeroBoundary{}, t_end, c, n, m));
    }
    return out;
}

std::vector<Trajectory> solve_large_boundary_family(const InitialData& u0,
                                                    std::span<const double> R_list, double h,
                                                    double M, double t_end,
                                                    const SolverConfig& cfg, int n, double m,
                                                    std::optional<double> cap)
{
    if (!(h > 0.0) || !(M > 0.0))
        throw std::invalid_argument("solve_large_boundary_family: need h > 0 and M > 0");
    for (std::size_t i = 1; i < R_list.size(); ++i)
        if (!(R_list[i] > R_list[i - 1]))
            throw std::invalid_argument("solve_large_boundary_family: R list must increase");

    std::vector<Trajectory> out;
    out.reserve(R_list.size());
    for (double R : R_list) {
        const auto cells = static_cast<std::size_t>(std::llround(R / h));
        if (cells == 0 || std::abs(cells * h - R) > 1e-9 * R)
            throw std::invalid_argument("solve_large_boundary_family: R must be a multiple of h");
        const auto grid = share(RadialGrid::uniform(n, cells, R));
        out.push_back(solve(sample_initial(u0, grid, cap), LargeBoundary{M}, t_end, cfg, n, m));
    }
    return out;
}

std::optional<double> extinction_time(const Trajectory& traj, double threshold)
{
    if (!(threshold > 0.0)) throw std::invalid_argument("extinction_time: threshold must be > 0");
    for (std::size_t k = 0; k < traj.size(); ++k)
        if (traj.fields[k].max() < threshold) return traj.times[k];
    return std::nullopt;
}

std::optional<double> extrapolated_extinction_time(const Trajectory& traj, double threshold,
                                                   double power)
{
    if (!(threshold > 0.0) || !(power > 0.0))
        throw std::invalid_argument("extrapolated_extinction_time: bad arguments");
    // max u^{1/power} is linear in t near extinction; use the last two samples above threshold
    std::optional<std::size_t> last;
    for (std::size_t k = 0; k < traj.size(); ++k)
        if (traj.fields[k].max() >= threshold) last = k;
    if (!last || *last == 0) return std::nullopt;
    const std::size_t k = *last;
    const double y1 = std::pow(traj.fields[k - 1].max(), 1.0 / power);
    const double y2 = std::pow(traj.fields[k].max(), 1.0 / power);
    if (!(y1 > y2)) return std::nullopt;
    const double t1 = traj.times[k - 1], t2 = traj.times[k];
    return t2 + y2 * (t2 - t1) / (y1 - y2);
}

double aronson_benilan_violation(const Trajectory& traj)
{
    if (traj.size() < 3) throw std::invalid_argument("aronson_benilan_violation: need >= 3 samples");
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        if (!(traj.times[k - 1] > 0.0)) continue;
        const double hm = traj.times[k] - traj.times[k - 1];
        const double hp = traj.times[k + 1] - traj.times[k];
        const auto a = traj.fields[k - 1].values();
        const auto b = traj.fields[k].values();
        const auto c = traj.fields[k + 1].values();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!(b[i] > 0.0)) continue;
            const double ut =
                (hm * hm * c[i] - hp * hp * a[i] - (hm * hm - hp * hp) * b[i]) / (hm * hp * (hm + hp));
            worst = std::max(worst, (1.0 - traj.m) * traj.times[k] * ut / b[i] - 1.0);
        }
    }
    return worst;
}

double max_difference_on_ball(const RadialField& a, const RadialField& b, double R)
{
    if (R > a.grid().r_max() * (1 + 1e-12) || R > b.grid().r_max() * (1 + 1e-12))
        throw DomainExceeded("max_difference_on_ball: R exceeds a field's domain");
    const auto c = a.grid().centers();
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size() && c[i] <= R; ++i)
        worst = std::max(worst, std::abs(a[i] - interpolate(b, c[i])));
    return worst;
}

}  // namespace vfde
