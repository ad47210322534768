#pragma once

#include "vfde/initial_data.hpp"
#include "vfde/model.hpp"
#include "vfde/trajectory.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vfde {

/// ∫_{B_R} u_0 dx (with the ω_n factor). Closed form for power laws and tables,
/// adaptive Gauss-Kronrod for Barenblatt slices.
double ball_mass(const InitialData& data, double R, int n);

/// G(R) = R^{-(n - 2/(1-m))} ∫_{B_R} u_0. Requires R > 0 and m <= (n-2)/n.
double growth_average(const InitialData& data, double R, const ModelParams& params);

enum class GrowthTrend { Diverging, Bounded, Vanishing, Inconclusive };

std::string to_string(GrowthTrend trend);

struct GrowthReport {
    std::vector<double> radii;
    std::vector<double> averages;
    /// slope of log G against log R over the tail half of the radii
    double tail_slope = 0.0;
    GrowthTrend trend = GrowthTrend::Inconclusive;
    /// min of G over the tail half (the liminf estimate)
    double liminf_estimate = 0.0;
    /// set when a horizon T and a calibrated C1 were supplied
    std::optional<double> threshold;
    std::optional<bool> meets_threshold;
};

/// Requires at least three increasing radii. Tail slope > 0.05 is diverging, |slope| <= 0.05
/// bounded, < -0.05 vanishing; identically zero data is vanishing.
GrowthReport growth_criterion_report(const InitialData& data, const ModelParams& params,
                                     const std::vector<double>& radii,
                                     std::optional<double> T = std::nullopt,
                                     std::optional<double> C1 = std::nullopt);

/// C_2 R² [∫_{B_R} u_0 / |B_{3R} \ B_{2R}|]^{1-m}; C_2 is a calibration input and must be > 0.
double extinction_lower_bound(const InitialData& data, double R, const ModelParams& params,
                              double C2);

/// Space-time test function η(r, t) with its radial Laplacian, time derivative and
/// outward normal derivative at r_max supplied analytically.
struct TestFunction {
    std::function<double(double, double)> value;
    std::function<double(double, double)> laplacian;
    std::function<double(double, double)> dt;
    std::function<double(double, double)> normal;
};

struct WeakFormResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Mismatch in
///   ∬ (κ u^m Δη + u η_t) = κ ∬_{∂B} g^m ∂_n η + ∫ u η (t2) - ∫ u η (t1),   κ = (n-1)/m,
/// with g the trajectory's boundary data, cell-midpoint quadrature in r and the
/// trapezoid rule over the samples in [t1, t2]. t1 and t2 must be sample times.
/// Throws std::invalid_argument if η does not vanish on the boundary sphere.
WeakFormResidual weak_form_residual(const Trajectory& traj, const TestFunction& eta, double t1,
                                    double t2);

/// min of u over cells with centre <= delta·R and samples with t in [t1, t2]. R is the
/// construction radius: data cut at 2R on a domain of radius 5R gives R = r_max/5.
double positivity_floor(const Trajectory& traj, double delta, double R, double t1, double t2);

}  // namespace vfde
