#include "vfde/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

TimeVaryingBoundary sampled_boundary(std::vector<double> times, std::vector<double> values)
{
    if (times.empty() || times.size() != values.size())
        throw std::invalid_argument("sampled_boundary: need matching nonempty samples");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("sampled_boundary: times must increase");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("sampled_boundary: values must be >= 0");
    auto ts = std::make_shared<const std::vector<double>>(std::move(times));
    auto vs = std::make_shared<const std::vector<double>>(std::move(values));
    auto g = [ts, vs](double t) {
        const auto& T = *ts;
        const auto& V = *vs;
        if (t <= T.front()) return V.front();
        if (t >= T.back()) return V.back();
        const auto i = static_cast<std::size_t>(std::upper_bound(T.begin(), T.end(), t) - T.begin());
        const double s = (t - T[i - 1]) / (T[i] - T[i - 1]);
        return (1.0 - s) * V[i - 1] + s * V[i];
    };
    return TimeVaryingBoundary{std::move(g), "sampled"};
}

double boundary_value(const BoundaryCondition& bc, double t)
{
    return std::visit(overloaded{
                          [](const ZeroBoundary&) { return 0.0; },
                          [](const ConstantBoundary& c) { return c.g; },
                          [&](const TimeVaryingBoundary& v) { return std::max(0.0, v.g(t)); },
                          [](const LargeBoundary& l) { return l.M; },
                      },
                      bc);
}

std::string describe(const BoundaryCondition& bc)
{
    return std::visit(overloaded{
                          [](const ZeroBoundary&) { return std::string("zero"); },
                          [](const ConstantBoundary& c) {
                              std::ostringstream os;
                              os << "constant(" << c.g << ")";
                              return os.str();
                          },
                          [](const TimeVaryingBoundary& v) { return "time-varying(" + v.label + ")"; },
                          [](const LargeBoundary& l) {
                              std::ostringstream os;
                              os << "large(" << l.M << ")";
                              return os.str();
                          },
                      },
                      bc);
}

void validate(const BoundaryCondition& bc)
{
    if (const auto* c = std::get_if<ConstantBoundary>(&bc); c && !(c->g >= 0.0))
        throw std::invalid_argument("ConstantBoundary: g must be >= 0");
    if (const auto* l = std::get_if<LargeBoundary>(&bc); l && !(l->M > 0.0))
        throw std::invalid_argument("LargeBoundary: M must be > 0");
    if (const auto* v = std::get_if<TimeVaryingBoundary>(&bc); v && !v->g)
        throw std::invalid_argument("TimeVaryingBoundary: empty function");
}

void validate(const SolverConfig& cfg)
{
    std::ostringstream os;
    if (!(cfg.dt_init > 0.0)) os << "dt_init must be > 0; ";
    if (!(cfg.dt_max >= cfg.dt_init)) os << "dt_max must be >= dt_init; ";
    if (!(cfg.dt_growth >= 1.0)) os << "dt_growth must be >= 1; ";
    if (!(cfg.newton_tol > 0.0)) os << "newton_tol must be > 0; ";
    if (cfg.newton_max < 1) os << "newton_max must be >= 1; ";
    if (!(cfg.eps_floor >= 0.0)) os << "eps_floor must be >= 0; ";
    if (!(cfg.extinction_threshold > 0.0)) os << "extinction_threshold must be > 0; ";
    for (double t : cfg.sample_times)
        if (!(t > 0.0)) os << "sample times must be > 0; ";
    if (!os.str().empty()) throw std::invalid_argument("SolverConfig: " + os.str());
}

std::size_t Trajectory::nearest(double t) const
{
    if (times.empty()) throw std::out_of_range("Trajectory::nearest: empty trajectory");
    std::size_t best = 0;
    for (std::size_t k = 1; k < times.size(); ++k)
        if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
    return best;
}

}  // namespace vfde
