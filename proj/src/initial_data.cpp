#include "vfde/initial_data.hpp"

#include "vfde/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vfde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// ∫_a^b (c0 + c1 r) r^{n-1} dr
double linear_moment(double a, double b, double c0, double c1, int n)
{
    return c0 * (std::pow(b, n) - std::pow(a, n)) / n +
           c1 * (std::pow(b, n + 1) - std::pow(a, n + 1)) / (n + 1);
}

}  // namespace

double Table::operator()(double radius) const
{
    if (r.empty()) return 0.0;
    if (radius <= r.front()) return values.front();
    if (radius > r.back()) return 0.0;
    const auto it = std::upper_bound(r.begin(), r.end(), radius);
    const auto i = static_cast<std::size_t>(it - r.begin());
    if (i >= r.size()) return values.back();
    const double s = (radius - r[i - 1]) / (r[i] - r[i - 1]);
    return (1.0 - s) * values[i - 1] + s * values[i];
}

double Table::mass(int n, bool absolute) const
{
    if (r.size() != values.size()) throw std::invalid_argument("Table: size mismatch");
    if (r.empty()) return 0.0;
    double sum = 0.0;
    const auto piece = [&](double a, double b, double fa, double fb) {
        if (b <= a) return;
        const double c1 = (fb - fa) / (b - a);
        const double c0 = fa - c1 * a;
        if (!absolute || (fa >= 0.0 && fb >= 0.0)) {
            sum += linear_moment(a, b, c0, c1, n);
        } else if (fa <= 0.0 && fb <= 0.0) {
            sum -= linear_moment(a, b, c0, c1, n);
        } else {
            const double z = a + fa * (b - a) / (fa - fb);
            sum += std::abs(linear_moment(a, z, c0, c1, n)) + std::abs(linear_moment(z, b, c0, c1, n));
        }
    };
    piece(0.0, r.front(), values.front(), values.front());
    for (std::size_t i = 1; i < r.size(); ++i) piece(r[i - 1], r[i], values[i - 1], values[i]);
    return sphere_area(n) * sum;
}

InitialData make_composite(InitialData base, Table perturbation)
{
    return InitialData{Composite{std::make_shared<const InitialData>(std::move(base)),
                                 std::move(perturbation)}};
}

double evaluate(const InitialData& data, double r, int n)
{
    return std::visit(
        overloaded{
            [&](const PowerLaw& p) {
                if (p.q == 0.0) return p.A;
                if (r <= 0.0) return std::numeric_limits<double>::infinity();
                return p.A * std::pow(r, -p.q);
            },
            [&](const BarenblattSlice& b) { return b.scale * barenblatt(r, b.t0, b.spec, n, b.m); },
            [&](const Composite& c) { return evaluate(*c.base, r, n) + c.perturbation(r); },
            [&](const Tabulated& t) {
                return r > t.field.grid().r_max() ? 0.0 : interpolate(t.field, r);
            },
        },
        data.form);
}

RadialField sample_initial(const InitialData& data, const GridPtr& grid, std::optional<double> cap)
{
    if (!grid) throw std::invalid_argument("sample_initial: null grid");
    const auto centers = grid->centers();
    const int n = grid->dimension();
    std::vector<double> values(centers.size());

    const auto sample_base = [&](const InitialData& d, std::vector<double>& out) {
        if (const auto* p = std::get_if<PowerLaw>(&d.form)) {
            if (p->A < 0.0 || p->q < 0.0) throw std::invalid_argument("PowerLaw: need A, q >= 0");
            const double limit = cap ? *cap : p->A * std::pow(centers.front(), -p->q);
            for (std::size_t i = 0; i < centers.size(); ++i)
                out[i] = std::min(p->A * std::pow(centers[i], -p->q), limit);
            return;
        }
        for (std::size_t i = 0; i < centers.size(); ++i) out[i] = evaluate(d, centers[i], n);
    };

    if (const auto* c = std::get_if<Composite>(&data.form)) {
        sample_base(*c->base, values);
        for (std::size_t i = 0; i < centers.size(); ++i) {
            values[i] += c->perturbation(centers[i]);
            if (values[i] < 0.0) {
                std::ostringstream os;
                os << "sample_initial: composite data negative (" << values[i] << ") at r = "
                   << centers[i];
                throw std::invalid_argument(os.str());
            }
        }
    } else {
        sample_base(data, values);
    }
    return RadialField(grid, std::move(values));
}

Table gaussian_bump(double mass, double width, int n, double center, std::size_t points)
{
    if (!(width > 0.0) || points < 3) throw std::invalid_argument("gaussian_bump: bad arguments");
    Table t;
    const double r_end = center + 8.0 * width;
    t.r.resize(points);
    t.values.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double r = r_end * static_cast<double>(i) / (points - 1);
        const double z = (r - center) / width;
        t.r[i] = r;
        t.values[i] = std::exp(-0.5 * z * z);
    }
    t.values.back() = 0.0;
    const double raw = t.mass(n);
    for (double& v : t.values) v *= mass / raw;
    return t;
}

}  // namespace vfde
