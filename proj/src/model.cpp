#include "vfde/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

std::string describe(const ModelParams& p)
{
    std::ostringstream os;
    os << "n=" << p.n << " m=" << p.m << " p=" << p.p << " q=" << p.q << " A=" << p.A;
    return os.str();
}

}  // namespace

std::vector<Violation> validate_params(const ModelParams& params, bool asymptotics)
{
    std::vector<Violation> out;
    const auto add = [&](std::string what, std::string detail) {
        out.push_back({std::move(what), std::move(detail) + " (" + describe(params) + ")"});
    };

    if (!std::isfinite(params.m) || !std::isfinite(params.p) || !std::isfinite(params.q) ||
        !std::isfinite(params.A)) {
        add("finite", "all parameters must be finite");
        return out;
    }
    if (params.n < 3) add("n >= 3", "dimension " + std::to_string(params.n) + " < 3");

    const double mc = critical_m(params.n);
    if (params.m <= 0.0) add("m > 0", "m must be positive");
    if (params.m > mc) {
        std::ostringstream os;
        os << "m = " << params.m << " exceeds (n-2)/n = " << mc;
        add("m <= (n-2)/n", os.str());
    } else if (asymptotics && params.m >= mc) {
        add("m < (n-2)/n", "asymptotics require m strictly below (n-2)/n");
    }

    const double p_min = std::max(1.0, (1.0 - params.m) * params.n / 2.0);
    if (!(params.p > p_min)) {
        std::ostringstream os;
        os << "p = " << params.p << " <= max(1, (1-m)n/2) = " << p_min;
        add("p > max(1,(1-m)n/2)", os.str());
    }

    if (asymptotics) {
        if (!(params.q > 0.0)) add("q > 0", "decay exponent must be positive");
        if (!(params.q < params.n / params.p)) {
            std::ostringstream os;
            os << "q = " << params.q << " >= n/p = " << params.n / params.p;
            add("q < n/p", os.str());
        }
        if (!(params.A > 0.0)) add("A > 0", "far-field amplitude must be positive");
    }
    return out;
}

Exponents compute_exponents(double q, double m)
{
    const double denom = 2.0 - q * (1.0 - m);
    if (!(denom > 0.0)) {
        std::ostringstream os;
        os << "compute_exponents: q = " << q << " >= 2/(1-m) = " << 2.0 / (1.0 - m);
        throw std::invalid_argument(os.str());
    }
    const double beta = 1.0 / denom;
    return {q * beta, beta};
}

double sphere_area(int n)
{
    if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
    const double half = 0.5 * n;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace vfde
