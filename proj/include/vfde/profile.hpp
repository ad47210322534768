#pragma once

#include "vfde/model.hpp"

#include <vector>

namespace vfde {

/// ((n-1)/m)[(v^m)'' + ((n-1)/r)(v^m)'] + α v + β r v' for the radial profile equation.
double ode_residual(double r, double v, double dv, double d2v, const ModelParams& params,
                    const Exponents& exps);

/// Leading series coefficient c in v = λ + c r² + O(r⁴) near the origin.
double series_coefficient(double lambda, const ModelParams& params, const Exponents& exps);

enum class ShotOutcome { Reached, Undershoot, Overshoot };

/// Samples of one shot on a uniform radial grid starting at r = 0. On early
/// termination the samples stop at the last grid point before `r_end`.
struct ShotCurve {
    double lambda = 0.0;
    ShotOutcome outcome = ShotOutcome::Reached;
    double r_end = 0.0;
    std::vector<double> r;
    std::vector<double> v;
    std::vector<double> dv;
};

/// Integrates the profile equation outward from r_s = 1e-4 r_max, starting on the
/// two-term series, with an adaptive Dormand-Prince pair at relative tolerance `tol`.
ShotCurve shoot(double lambda, double r_max, const ModelParams& params, const Exponents& exps,
                double tol = 1e-11, std::size_t samples = 20001);

struct AmplitudeEstimate {
    double A = 0.0;
    /// |A - r_max^q v(r_max)|, the size of the extrapolation correction
    double spread = 0.0;
};

/// r^q v at r_max, Richardson-extrapolated against r_max/2 using the next far-field
/// term r^{-q-1/β}. Throws Undershoot unless the curve reached r_max.
AmplitudeEstimate far_field_amplitude(const ShotCurve& curve, double q, double beta);

struct ProfileConfig {
    /// 0 selects 50/β
    double r_max = 0.0;
    double tol = 1e-11;
    std::size_t samples = 20001;
    double amplitude_tol = 1e-4;
    int max_doublings = 60;
    int max_bisections = 200;
};

/// The self-similar profile ṽ = ψ(·,1) with its shooting data.
class Profile {
public:
    Profile(ModelParams params, Exponents exps, ShotCurve curve, AmplitudeEstimate amplitude);

    double lambda() const { return curve_.lambda; }
    double A_achieved() const { return amplitude_.A; }
    double amplitude_spread() const { return amplitude_.spread; }
    const Exponents& exponents() const { return exps_; }
    const ModelParams& params() const { return params_; }
    double r_max() const { return curve_.r.back(); }
    const std::vector<double>& radii() const { return curve_.r; }
    const std::vector<double>& values() const { return curve_.v; }
    const std::vector<double>& slopes() const { return curve_.dv; }

    /// Cubic Hermite interpolation of (v, v'); throws DomainExceeded past r_max.
    double operator()(double r) const;

private:
    ModelParams params_;
    Exponents exps_;
    ShotCurve curve_;
    AmplitudeEstimate amplitude_;
};

/// Geometric bisection on λ until the far-field amplitude matches A_target to
/// cfg.amplitude_tol (relative). Throws NoBracket, NonMonotoneShooting, or
/// std::invalid_argument for inadmissible parameters.
Profile solve_profile(double A_target, const ModelParams& params, const ProfileConfig& cfg = {});

/// t^{-α} ṽ(t^{-β} r); throws DomainExceeded when t^{-β} r > r_max.
double psi(double r, double t, const Profile& profile);

struct SandwichReport {
    bool upper_ok = false;
    bool lower_ok = false;
    /// min over samples of A r^{-q}(1+tol)/ṽ - 1 (negative means violated)
    double upper_margin = 0.0;
    /// min over checked samples of ψ/(B(1-tol)) - 1 (negative means violated)
    double lower_margin = 0.0;
    /// time at which ψ ≥ B_{k_c}(·, t; T_c) was checked
    double lower_time = 0.0;
    std::size_t lower_samples = 0;
};

/// Upper bound ṽ ≤ A r^{-q} and lower bound ψ ≥ B_{k_c} with (T_c, k_c) from
/// comparison_constants. When T_c <= 1 the lower bound is checked at t = T_c/2.
SandwichReport sandwich_check(const Profile& profile, double A, const ModelParams& params,
                              double tol = 1e-3);

}  // namespace vfde
