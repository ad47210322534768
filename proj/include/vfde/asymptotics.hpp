#pragma once

#include "vfde/initial_data.hpp"
#include "vfde/model.hpp"
#include "vfde/profile.hpp"
#include "vfde/trajectory.hpp"

#include <vector>

namespace vfde {

/// v(r) = t^α u(t^β r, t) on `target`, with u linearly interpolated in t between the
/// bracketing samples. Throws DomainExceeded if t^β r_max(target) leaves the solver domain
/// and std::out_of_range if t is outside the sampled range.
RadialField rescale_solution(const Trajectory& traj, double t, const Exponents& exps,
                             const GridPtr& target);

/// u_{0,γ}(x) = γ^q u_0(γx), symbolic for power laws and Barenblatt slices, by resampling
/// for tables. Requires γ >= 1.
InitialData rescale_initial(const InitialData& data, double gamma, double q);

/// max |a - b| over `samples` equispaced radii in [0, R].
double compact_sup_distance(const RadialField& a, const RadialField& b, double R,
                            std::size_t samples = 2001);
double compact_sup_distance(const RadialField& a, const Profile& b, double R,
                            std::size_t samples = 2001);

/// ψ(r, t) continued past the profile's last radius by the two-term far field
/// t^{-α} ρ^{-q}(A + b ρ^{-1/β}), ρ = t^{-β} r, b = (n-1)A^m q(qm + 2 - n).
double psi_extended(double r, double t, const Profile& profile);

/// Boundary data g(t) = psi_extended(r_max, t).
TimeVaryingBoundary self_similar_boundary(const Profile& profile, double r_max);

struct ConvergenceReport {
    std::vector<double> times;
    std::vector<double> distances;
    double R = 2.0;
    double lambda = 0.0;
    double A = 0.0;
    /// first index of the tail window [t_last/10, t_last]
    std::size_t tail_start = 0;
    /// distances.back() / distances[tail_start]
    double tail_ratio = 0.0;
    /// true when the tail window is nonincreasing up to 1% noise
    bool tail_monotone = false;
};

struct ConvergenceSetup {
    GridPtr grid;
    BoundaryCondition bc;
    SolverConfig solver;
    /// cells of the rescaled comparison grid on [0, R]
    std::size_t target_cells = 400;
};

/// Solves from `data`, rescales at each requested time and measures the distance to the
/// profile on B_R. Throws DomainExceeded if t^β R leaves the grid for some time.
ConvergenceReport convergence_study(const InitialData& data, const ModelParams& params,
                                    const std::vector<double>& times, double R,
                                    const Profile& profile, const ConvergenceSetup& setup);

struct L1Report {
    std::vector<double> times;
    std::vector<double> D;
    double D0 = 0.0;
    /// least-squares line D^{1-m} - D0^{1-m} ≈ intercept + slope·t over the samples
    double slope = 0.0;
    double intercept = 0.0;
    /// max |y - fit| / max |y|
    double residual = 0.0;
};

/// ω_n ∫_{B_R1} |a - b| r^{n-1} dr over the cells of a (common grid).
double l1_distance_on_ball(const RadialField& a, const RadialField& b, double R1);

/// Runs both data sets on the same grid and boundary and fits the L¹ growth template.
/// D0 is taken at the first positive sample time.
L1Report l1_difference_check(const InitialData& data_a, const InitialData& data_b,
                             const ModelParams& params, const std::vector<double>& times,
                             double R1, const GridPtr& grid, const BoundaryCondition& bc,
                             const SolverConfig& cfg);

}  // namespace vfde
