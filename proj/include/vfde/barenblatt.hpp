#pragma once

#include <span>
#include <utility>

namespace vfde {

/// Shape constant k and extinction time T of the explicit extinguishing solution
///   B_k(x,t) = (C_* / (k + (T-t)_+^{2/(n-2-nm)} |x|^2))^{1/(1-m)} (T-t)_+^{n/(n-2-nm)}.
struct BarenblattSpec {
    double k = 1.0;
    double T = 1.0;
};

/// C_* = 2(n-1)(n-2-nm)/(1-m); zero at the critical exponent.
double cstar(int n, double m);

/// Pointwise value; 0 for t >= T. Throws std::invalid_argument unless m < (n-2)/n.
double barenblatt(double r, double t, const BarenblattSpec& spec, int n, double m);

/// Radial derivative ∂B/∂r.
double barenblatt_dr(double r, double t, const BarenblattSpec& spec, int n, double m);

struct SpaceTimePoint {
    double r;
    double t;
};

/// max |u_t - ((n-1)/m) Δu^m| over the points, using second-order central
/// differences of step h in both r and t on the closed form.
double barenblatt_pde_residual(const BarenblattSpec& spec, int n, double m,
                               std::span<const SpaceTimePoint> points, double h);

/// Extinction time T_c and shape constant k_c such that B_{k_c}(x,0) <= A|x|^{-q}.
struct ComparisonConstants {
    double T;
    double k;
};

ComparisonConstants comparison_constants(double A, double q, int n, double m);

/// lim_{R→∞} R^{-(n-2/(1-m))} ∫_{B_R} B_k(x,0) dx = ω_n C_*^{1/(1-m)} T^{1/(1-m)} / (n - 2/(1-m)).
double barenblatt_growth_limit(const BarenblattSpec& spec, int n, double m);

}  // namespace vfde
