#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace vfde {

/// Cell-centred discretization of the ball B_{r_max} in radial symmetry.
/// Faces start at 0 and increase strictly; centres are face midpoints.
class RadialGrid {
public:
    RadialGrid(int n, std::vector<double> faces);

    static RadialGrid uniform(int n, std::size_t cells, double r_max);

    /// Cell widths grow geometrically by `ratio` from the origin to r_max.
    static RadialGrid stretched(int n, std::size_t cells, double r_max, double ratio);

    /// Uniform cells of width h up to r_uniform, then geometric growth (at most
    /// `ratio` per cell) out to r_max. The last cell ends exactly at r_max.
    static RadialGrid uniform_then_stretched(int n, double h, double r_uniform, double r_max,
                                             double ratio);

    int dimension() const { return n_; }
    std::size_t size() const { return centers_.size(); }
    double r_max() const { return faces_.back(); }
    std::span<const double> faces() const { return faces_; }
    std::span<const double> centers() const { return centers_; }

    /// ∫ r^{n-1} dr over cell i (the ball volume without the ω_n factor).
    double cell_volume(std::size_t i) const { return volumes_[i]; }
    double width(std::size_t i) const { return faces_[i + 1] - faces_[i]; }

    /// Index of the last cell whose centre is <= r (0 when r is below the first centre).
    std::size_t locate(double r) const;

private:
    int n_;
    std::vector<double> faces_;
    std::vector<double> centers_;
    std::vector<double> volumes_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline GridPtr share(RadialGrid grid) { return std::make_shared<const RadialGrid>(std::move(grid)); }

/// Nonnegative cell values on a shared grid.
class RadialField {
public:
    RadialField(GridPtr grid, std::vector<double> values);
    RadialField(GridPtr grid, double constant);

    const RadialGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    double max() const;
    double min() const;

    /// ∫_{B_R} u dx over the whole grid, including the ω_n factor.
    double mass() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// Piecewise-linear interpolation through the cell centres, flat inside the
/// first centre, linearly extrapolated past the last one, clamped at zero.
/// Throws std::out_of_range for r outside [0, r_max].
double interpolate(const RadialField& field, double r);

}  // namespace vfde
