#pragma once

#include <string>
#include <vector>

namespace vfde {

/// Parameters of u_t = ((n-1)/m) Δu^m together with the far-field data A|x|^{-q}.
struct ModelParams {
    int n = 3;
    double m = 0.2;
    double p = 2.0;
    double q = 1.0;
    double A = 1.0;
};

/// Self-similar exponents: v(x,t) = t^alpha u(t^beta x, t).
struct Exponents {
    double alpha = 0.0;
    double beta = 0.0;
};

struct Violation {
    std::string constraint;
    std::string detail;
};

/// Every violated admissibility constraint; empty means valid.
/// With `asymptotics` set, also requires m < (n-2)/n strictly, 0 < q < n/p and A > 0.
std::vector<Violation> validate_params(const ModelParams& params, bool asymptotics);

/// Throws std::invalid_argument when q >= 2/(1-m).
Exponents compute_exponents(double q, double m);

/// Surface area of the unit sphere S^{n-1}.
double sphere_area(int n);

/// The coefficient (n-1)/m in front of Δu^m.
inline double diffusion_coefficient(int n, double m) { return (n - 1) / m; }

/// Critical exponent (n-2)/n separating the very fast regime.
inline double critical_m(int n) { return (n - 2.0) / n; }

/// n - 2/(1-m), the power of R normalizing the growth average.
inline double growth_exponent(int n, double m) { return n - 2.0 / (1.0 - m); }

}  // namespace vfde
