#pragma once

#include "vfde/grid.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace vfde {

struct ZeroBoundary {};

struct ConstantBoundary {
    double g = 0.0;
};

/// g(t) >= 0, evaluated at the new time level of each step.
struct TimeVaryingBoundary {
    std::function<double(double)> g;
    std::string label = "time-varying";
};

/// Finite stand-in M for the infinite boundary value.
struct LargeBoundary {
    double M = 1e3;
};

using BoundaryCondition = std::variant<ZeroBoundary, ConstantBoundary, TimeVaryingBoundary, LargeBoundary>;

/// Linear interpolation of sampled (t, g) pairs, held constant outside the samples.
TimeVaryingBoundary sampled_boundary(std::vector<double> times, std::vector<double> values);

double boundary_value(const BoundaryCondition& bc, double t);
std::string describe(const BoundaryCondition& bc);

/// Throws std::invalid_argument for negative values or a non-positive M.
void validate(const BoundaryCondition& bc);

enum class TimeScheme { BackwardEuler, Bdf2 };

struct SolverConfig {
    double dt_init = 1e-4;
    double dt_max = 1e-2;
    double dt_growth = 1.1;
    double newton_tol = 1e-12;
    int newton_max = 40;
    /// additive lift ε of initial and boundary data; also the clamp level
    double eps_floor = 0.0;
    double extinction_threshold = 1e-8;
    /// output schedule in (0, t_end]; t = 0 and t_end are always recorded
    std::vector<double> sample_times;
    TimeScheme scheme = TimeScheme::BackwardEuler;
};

void validate(const SolverConfig& cfg);

struct StepDiagnostics {
    double t = 0.0;
    double dt = 0.0;
    int newton_iterations = 0;
    double residual = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
};

struct Trajectory {
    int n = 3;
    double m = 0.2;
    std::vector<double> times;
    std::vector<RadialField> fields;
    BoundaryCondition bc;
    SolverConfig config;
    std::vector<StepDiagnostics> steps;
    int rejected_steps = 0;

    std::size_t size() const { return times.size(); }
    const RadialGrid& grid() const { return fields.front().grid(); }

    /// Index of the sample closest to t.
    std::size_t nearest(double t) const;
};

}  // namespace vfde
