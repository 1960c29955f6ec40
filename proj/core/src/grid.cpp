#include "parmax/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parmax {

Cylinder::Cylinder(int dim, double radius, double final_time, int nx, int nt)
    : dim_(dim), radius_(radius), final_time_(final_time), nx_(nx), nt_(nt) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("cylinder dimension must be 1 or 2");
    if (!(radius > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
    if (!(final_time > 0.0)) throw std::invalid_argument("cylinder final time must be positive");
    if (nx < 3) throw std::invalid_argument("cylinder needs at least 3 nodes per spatial axis");
    if (nt < 2) throw std::invalid_argument("cylinder needs at least 2 time levels");
    hx_ = 2.0 * radius / (nx - 1);
    ht_ = final_time / (nt - 1);
    space_count_ = static_cast<std::size_t>(nx);
    if (dim == 2) space_count_ *= static_cast<std::size_t>(nx);
}

double Cylinder::spatial_radius(std::size_t is) const {
    const double x1 = coord(is, 0);
    if (dim_ == 1) return std::abs(x1);
    const double x2 = coord(is, 1);
    return std::hypot(x1, x2);
}

Cylinder build_cylinder(int dim, double radius, double final_time, int nx, int nt) {
    return Cylinder(dim, radius, final_time, nx, nt);
}

GridFunction::GridFunction(const Cylinder& grid)
    : grid_(grid), values_(grid.node_count(), 0.0) {}

GridFunction::GridFunction(const Cylinder& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count())
        throw std::invalid_argument("grid function value count does not match the grid");
    for (const double v : values_) {
        if (!std::isfinite(v))
            throw std::invalid_argument("grid function values must be finite");
    }
}

GridFunction GridFunction::sample(const Cylinder& grid, const Sampler& fn) {
    std::vector<double> values(grid.node_count());
    for (int it = 0; it < grid.nt(); ++it) {
        const double t = grid.time(it);
        for (std::size_t is = 0; is < grid.space_count(); ++is) {
            values[grid.flat(is, it)] = fn(grid.coords(is), t);
        }
    }
    return GridFunction(grid, std::move(values));
}

double GridFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double GridFunction::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

ParabolicBoundaryMask::ParabolicBoundaryMask(const Cylinder& grid)
    : grid_(grid), flags_(grid.node_count(), NodeClass::Interior) {
    for (int it = 0; it < grid.nt(); ++it) {
        for (std::size_t is = 0; is < grid.space_count(); ++is) {
            NodeClass c = NodeClass::Interior;
            if (grid.lateral(is)) {
                c = NodeClass::Lateral;
            } else if (it == 0) {
                c = NodeClass::Initial;
            } else if (it == grid.nt() - 1) {
                c = NodeClass::FinalInterior;
            }
            flags_[grid.flat(is, it)] = c;
        }
    }
}

ParabolicBoundaryMask parabolic_boundary(const Cylinder& grid) {
    return ParabolicBoundaryMask(grid);
}

PositivitySet::PositivitySet(const Cylinder& grid, std::vector<std::uint8_t> membership)
    : grid_(grid), membership_(std::move(membership)) {
    if (membership_.size() != grid_.node_count())
        throw std::invalid_argument("positivity set size does not match the grid");
}

PositivitySet PositivitySet::empty(const Cylinder& grid) {
    return PositivitySet(grid, std::vector<std::uint8_t>(grid.node_count(), 0));
}

PositivitySet PositivitySet::full(const Cylinder& grid) {
    return PositivitySet(grid, std::vector<std::uint8_t>(grid.node_count(), 1));
}

std::size_t PositivitySet::count() const {
    std::size_t n = 0;
    for (const auto m : membership_) n += (m != 0);
    return n;
}

PositivitySet PositivitySet::intersect(const PositivitySet& other) const {
    if (!(grid_ == other.grid_))
        throw std::invalid_argument("positivity set intersection needs a common grid");
    std::vector<std::uint8_t> out(membership_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (membership_[i] != 0 && other.membership_[i] != 0) ? 1 : 0;
    return PositivitySet(grid_, std::move(out));
}

PositivitySet positivity_set(const GridFunction& u, double tol_pos) {
    const Cylinder& grid = u.grid();
    std::vector<std::uint8_t> membership(grid.node_count());
    const auto values = u.values();
    for (std::size_t i = 0; i < membership.size(); ++i)
        membership[i] = values[i] > tol_pos ? 1 : 0;
    return PositivitySet(grid, std::move(membership));
}

namespace {

// Antiderivative of sqrt(R^2 - x^2).
double circle_segment_primitive(double radius, double x) {
    x = std::clamp(x, -radius, radius);
    return 0.5 * (x * std::sqrt(std::max(radius * radius - x * x, 0.0)) +
                  radius * radius * std::asin(x / radius));
}

double integral_of_g(double radius, double a, double b) {
    return circle_segment_primitive(radius, b) - circle_segment_primitive(radius, a);
}

}  // namespace

double disk_rectangle_intersection_area(double radius, double xl, double xr, double yl,
                                        double yr) {
    xl = std::max(xl, -radius);
    xr = std::min(xr, radius);
    if (xl >= xr || yl >= yr) return 0.0;

    // Split [xl, xr] where the chord half-height g(x) crosses yr or yl;
    // on each piece the covered height is A + B*g with B in {0, 1, 2}.
    std::vector<double> cuts = {xl, xr};
    for (const double y : {yl, yr}) {
        if (std::abs(y) < radius) {
            const double x = std::sqrt(radius * radius - y * y);
            for (const double c : {-x, x})
                if (c > xl && c < xr) cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    double area = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k];
        const double b = cuts[k + 1];
        if (b - a <= 0.0) continue;
        const double xm = 0.5 * (a + b);
        const double g = std::sqrt(std::max(radius * radius - xm * xm, 0.0));
        const double top = std::min(yr, g);
        const double bottom = std::max(yl, -g);
        if (top <= bottom) continue;
        const bool top_is_chord = g < yr;
        const bool bottom_is_chord = -g > yl;
        double piece = 0.0;
        if (!top_is_chord && !bottom_is_chord) {
            piece = (yr - yl) * (b - a);
        } else if (top_is_chord && !bottom_is_chord) {
            piece = integral_of_g(radius, a, b) - yl * (b - a);
        } else if (!top_is_chord && bottom_is_chord) {
            piece = yr * (b - a) + integral_of_g(radius, a, b);
        } else {
            piece = 2.0 * integral_of_g(radius, a, b);
        }
        area += std::max(piece, 0.0);
    }
    return area;
}

double node_cell_coverage(const Cylinder& grid, std::size_t is) {
    const double h = grid.hx();
    const double R = grid.radius();
    const double x = grid.coord(is, 0);
    if (grid.dim() == 1) {
        const double lo = std::max(x - 0.5 * h, -R);
        const double hi = std::min(x + 0.5 * h, R);
        return std::max(hi - lo, 0.0);
    }
    const double y = grid.coord(is, 1);
    return disk_rectangle_intersection_area(R, x - 0.5 * h, x + 0.5 * h, y - 0.5 * h,
                                            y + 0.5 * h);
}

}  // namespace parmax
