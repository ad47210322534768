#include "vfde/barenblatt.hpp"

#include "vfde/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

void require_subcritical(int n, double m, const char* who)
{
    if (n < 3 || !(m > 0.0) || !(m < critical_m(n))) {
        std::ostringstream os;
        os << who << ": requires n >= 3 and 0 < m < (n-2)/n (got n=" << n << ", m=" << m << ")";
        throw std::invalid_argument(os.str());
    }
}

void require_spec(const BarenblattSpec& spec, const char* who)
{
    if (!(spec.k > 0.0) || !(spec.T > 0.0)) {
        std::ostringstream os;
        os << who << ": k and T must be positive";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double cstar(int n, double m) { return 2.0 * (n - 1) * (n - 2 - n * m) / (1.0 - m); }

double barenblatt(double r, double t, const BarenblattSpec& spec, int n, double m)
{
    require_subcritical(n, m, "barenblatt");
    require_spec(spec, "barenblatt");
    const double tau = spec.T - t;
    if (!(tau > 0.0)) return 0.0;
    const double d = n - 2 - n * m;
    const double denom = spec.k + std::pow(tau, 2.0 / d) * r * r;
    return std::pow(cstar(n, m) / denom, 1.0 / (1.0 - m)) * std::pow(tau, n / d);
}

double barenblatt_dr(double r, double t, const BarenblattSpec& spec, int n, double m)
{
    require_subcritical(n, m, "barenblatt_dr");
    require_spec(spec, "barenblatt_dr");
    const double tau = spec.T - t;
    if (!(tau > 0.0)) return 0.0;
    const double d = n - 2 - n * m;
    const double s = std::pow(tau, 2.0 / d);
    const double denom = spec.k + s * r * r;
    return -barenblatt(r, t, spec, n, m) / (1.0 - m) * 2.0 * s * r / denom;
}

double barenblatt_pde_residual(const BarenblattSpec& spec, int n, double m,
                               std::span<const SpaceTimePoint> points, double h)
{
    require_subcritical(n, m, "barenblatt_pde_residual");
    if (!(h > 0.0)) throw std::invalid_argument("barenblatt_pde_residual: h must be positive");
    const double c = diffusion_coefficient(n, m);
    const auto w = [&](double r, double t) { return std::pow(barenblatt(r, t, spec, n, m), m); };

    double worst = 0.0;
    for (const auto& pt : points) {
        if (pt.t >= spec.T) continue;  // identically zero there
        const double u_t = (barenblatt(pt.r, pt.t + h, spec, n, m) -
                            barenblatt(pt.r, pt.t - h, spec, n, m)) / (2.0 * h);
        const double wp = w(pt.r + h, pt.t);
        const double w0 = w(pt.r, pt.t);
        const double wm = w(pt.r - h, pt.t);
        const double lap = (wp - 2.0 * w0 + wm) / (h * h) + (n - 1) / pt.r * (wp - wm) / (2.0 * h);
        worst = std::max(worst, std::abs(u_t - c * lap));
    }
    return worst;
}

ComparisonConstants comparison_constants(double A, double q, int n, double m)
{
    require_subcritical(n, m, "comparison_constants");
    if (!(A > 0.0) || !(q > 0.0) || !(q < 2.0 / (1.0 - m))) {
        std::ostringstream os;
        os << "comparison_constants: requires A > 0 and 0 < q < 2/(1-m) (got A=" << A << ", q=" << q
           << ")";
        throw std::invalid_argument(os.str());
    }
    const double d = n - 2 - n * m;
    const double cs = std::pow(cstar(n, m), 1.0 / (1.0 - m));
    const double T = std::pow(A / (q * (1.0 - m) * cs), d / n);
    const double alpha = compute_exponents(q, m).alpha;
    const double k = std::pow(2.0 / (q * (1.0 - m)) - 1.0, 1.0 - m) *
                     std::pow(T, -2.0 * alpha * (1.0 - m) / d);
    return {T, k};
}

double barenblatt_growth_limit(const BarenblattSpec& spec, int n, double m)
{
    const double g = growth_exponent(n, m);
    if (!(g > 1e-12)) {
        std::ostringstream os;
        os << "barenblatt_growth_limit: n - 2/(1-m) = " << g << " must be positive";
        throw std::invalid_argument(os.str());
    }
    require_spec(spec, "barenblatt_growth_limit");
    const double e = 1.0 / (1.0 - m);
    return sphere_area(n) * std::pow(cstar(n, m), e) * std::pow(spec.T, e) / g;
}

}  // namespace vfde
