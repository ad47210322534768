#include "vfde/grid.hpp"

#include "vfde/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vfde {

RadialGrid::RadialGrid(int n, std::vector<double> faces) : n_(n), faces_(std::move(faces))
{
    if (n_ < 1) throw std::invalid_argument("RadialGrid: dimension must be positive");
    if (faces_.size() < 2) throw std::invalid_argument("RadialGrid: need at least one cell");
    if (faces_.front() != 0.0) throw std::invalid_argument("RadialGrid: first face must be 0");
    for (std::size_t i = 1; i < faces_.size(); ++i) {
        if (!(faces_[i] > faces_[i - 1]))
            throw std::invalid_argument("RadialGrid: faces must be strictly increasing");
    }
    const std::size_t cells = faces_.size() - 1;
    centers_.resize(cells);
    volumes_.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        centers_[i] = 0.5 * (faces_[i] + faces_[i + 1]);
        volumes_[i] = (std::pow(faces_[i + 1], n_) - std::pow(faces_[i], n_)) / n_;
    }
}

RadialGrid RadialGrid::uniform(int n, std::size_t cells, double r_max)
{
    if (cells == 0 || !(r_max > 0.0)) throw std::invalid_argument("RadialGrid::uniform: bad size");
    std::vector<double> faces(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) faces[i] = r_max * static_cast<double>(i) / cells;
    faces.back() = r_max;
    return RadialGrid(n, std::move(faces));
}

RadialGrid RadialGrid::stretched(int n, std::size_t cells, double r_max, double ratio)
{
    if (!(ratio > 0.0)) throw std::invalid_argument("RadialGrid::stretched: ratio must be > 0");
    if (std::abs(ratio - 1.0) < 1e-14) return uniform(n, cells, r_max);
    std::vector<double> faces(cells + 1, 0.0);
    const double h0 = r_max * (ratio - 1.0) / (std::pow(ratio, static_cast<double>(cells)) - 1.0);
    double h = h0;
    for (std::size_t i = 1; i <= cells; ++i) {
        faces[i] = faces[i - 1] + h;
        h *= ratio;
    }
    faces.back() = r_max;
    return RadialGrid(n, std::move(faces));
}

RadialGrid RadialGrid::uniform_then_stretched(int n, double h, double r_uniform, double r_max,
                                              double ratio)
{
    if (!(h > 0.0) || !(r_uniform > 0.0) || !(r_max >= r_uniform) || !(ratio >= 1.0))
        throw std::invalid_argument("RadialGrid::uniform_then_stretched: bad arguments");
    const auto uniform_cells = static_cast<std::size_t>(std::ceil(r_uniform / h - 1e-9));
    std::vector<double> faces(uniform_cells + 1);
    for (std::size_t i = 0; i <= uniform_cells; ++i) faces[i] = h * static_cast<double>(i);
    double width = h;
    while (faces.back() < r_max) {
        width *= ratio;
        const double next = faces.back() + width;
        // fold a short remainder into the last cell
        if (next + 0.5 * width * ratio >= r_max) {
            faces.push_back(r_max);
            break;
        }
        faces.push_back(next);
    }
    faces.back() = std::max(faces.back(), r_max);
    return RadialGrid(n, std::move(faces));
}

std::size_t RadialGrid::locate(double r) const
{
    const auto it = std::upper_bound(centers_.begin(), centers_.end(), r);
    if (it == centers_.begin()) return 0;
    return static_cast<std::size_t>(it - centers_.begin()) - 1;
}

RadialField::RadialField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (!grid_) throw std::invalid_argument("RadialField: null grid");
    if (values_.size() != grid_->size())
        throw std::invalid_argument("RadialField: value count does not match grid");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << "RadialField: values must be finite and nonnegative (got " << v << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

RadialField::RadialField(GridPtr grid, double constant)
    : RadialField(grid, std::vector<double>(grid ? grid->size() : 0, constant))
{
}

double RadialField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double RadialField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RadialField::mass() const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) sum += values_[i] * grid_->cell_volume(i);
    return sphere_area(grid_->dimension()) * sum;
}

double interpolate(const RadialField& field, double r)
{
    const RadialGrid& g = field.grid();
    if (!(r >= 0.0) || r > g.r_max() * (1.0 + 1e-14)) {
        std::ostringstream os;
        os << "interpolate: r = " << r << " outside [0, " << g.r_max() << "]";
        throw std::out_of_range(os.str());
    }
    const auto c = g.centers();
    const auto v = field.values();
    if (v.size() == 1 || r <= c.front()) return v.front();
    std::size_t i = g.locate(r);
    if (i + 1 >= v.size()) i = v.size() - 2;
    const double s = (r - c[i]) / (c[i + 1] - c[i]);
    return std::max(0.0, (1.0 - s) * v[i] + s * v[i + 1]);
}

}  // namespace vfde
