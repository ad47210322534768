#pragma once

#include "vfde/initial_data.hpp"
#include "vfde/trajectory.hpp"

#include <optional>
#include <span>
#include <vector>

namespace vfde {

/// One backward-Euler step of the conservative radial scheme
///   V_i (u⁺_i - u_i)/dt = ((n-1)/m) [a_{i+1/2} D_{i+1/2}(u⁺)^m - a_{i-1/2} D_{i-1/2}(u⁺)^m],
/// zero flux at the origin and the boundary value at r_max, solved by Newton on
/// the tridiagonal Jacobian. `t_old` locates the new level for time-varying data.
/// Throws NewtonDivergence or NonphysicalState.
RadialField advance(const RadialField& field, double dt, const BoundaryCondition& bc,
                    const SolverConfig& cfg, int n, double m, double t_old = 0.0);

/// Adaptive time march from t = 0 to t_end. Initial and boundary data are lifted by
/// cfg.eps_floor. Throws NewtonDivergence once dt falls below 1e-14 t_end.
Trajectory solve(const RadialField& u0, const BoundaryCondition& bc, double t_end,
                 const SolverConfig& cfg, int n, double m);

/// For each ε: data u0·χ_{r <= cut_radius} + ε with boundary value ε on u0's grid.
/// eps_list must be positive and strictly decreasing.
std::vector<Trajectory> solve_epsilon_family(const RadialField& u0, double cut_radius,
                                             std::span<const double> eps_list, double t_end,
                                             const SolverConfig& cfg, int n, double m);

/// For each R: data sampled on a uniform grid of spacing h over B_R, boundary value M.
/// R_list must be increasing; all grids share the cell width so cells nest.
std::vector<Trajectory> solve_large_boundary_family(const InitialData& u0,
                                                    std::span<const double> R_list, double h,
                                                    double M, double t_end,
                                                    const SolverConfig& cfg, int n, double m,
                                                    std::optional<double> cap = std::nullopt);

/// First sampled time with max u below threshold.
std::optional<double> extinction_time(const Trajectory& traj, double threshold);

/// Time at which max u reaches zero, extrapolated from the two sampled times where max u
/// last exceeds `threshold`, assuming max u ~ C (T - t)^power near extinction.
std::optional<double> extrapolated_extinction_time(const Trajectory& traj, double threshold,
                                                   double power);

/// max over interior samples and positive cells of (1-m) t u_t / u - 1, with u_t from
/// centred differences between neighbouring samples (all at t > 0).
double aronson_benilan_violation(const Trajectory& traj);

/// Sup-norm distance between two fields on the common radii [0, R], evaluated at the
/// cell centres of `a` inside B_R.
double max_difference_on_ball(const RadialField& a, const RadialField& b, double R);

}  // namespace vfde
