#pragma once

#include "vfde/barenblatt.hpp"
#include "vfde/grid.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace vfde {

/// Radial table with linear interpolation; flat inside the first abscissa and
/// zero beyond the last one (compact support).
struct Table {
    std::vector<double> r;
    std::vector<double> values;

    double operator()(double radius) const;

    /// ω_n ∫ f r^{n-1} dr of the piecewise-linear interpolant (exact), and of |f|
    /// when `absolute` is set (exact up to sign changes inside a segment).
    double mass(int n, bool absolute = false) const;
};

/// A r^{-q}
struct PowerLaw {
    double A = 1.0;
    double q = 1.0;
};

/// scale · B_k(r, t0) for the explicit solution with exponent m.
struct BarenblattSlice {
    BarenblattSpec spec;
    double t0 = 0.0;
    double m = 0.2;
    double scale = 1.0;
};

struct InitialData;

/// base + φ with φ tabulated, possibly signed.
struct Composite {
    std::shared_ptr<const InitialData> base;
    Table perturbation;
};

struct Tabulated {
    RadialField field;
};

struct InitialData {
    std::variant<PowerLaw, BarenblattSlice, Composite, Tabulated> form;
};

InitialData make_composite(InitialData base, Table perturbation);

/// Pointwise value at radius r (+inf for a power law at r = 0).
double evaluate(const InitialData& data, double r, int n);

/// Cell-centre samples; a power law is capped at `cap` when given. Throws
/// std::invalid_argument when a composite sums to a negative value.
RadialField sample_initial(const InitialData& data, const GridPtr& grid,
                           std::optional<double> cap = std::nullopt);

/// Gaussian amplitude·exp(-(r-center)^2/(2 width^2)) tabulated on [0, center + 8 width],
/// normalized so that its ω_n-weighted mass equals `mass`.
Table gaussian_bump(double mass, double width, int n, double center = 0.0,
                    std::size_t points = 4001);

}  // namespace vfde
