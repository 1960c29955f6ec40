#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace parmax {

/// Space-time cylinder: the ball of radius R in dimension n (1 or 2),
/// embedded in the box [-R,R]^n, times the interval [0,T]. Uniform
/// node-centered tensor grid with Nx nodes per spatial axis and Nt time
/// levels. Nodes with |x| >= R are the lateral boundary of the embedded
/// ball; the tensor structure keeps every discrete operator banded.
class Cylinder {
public:
    Cylinder(int dim, double radius, double final_time, int nx, int nt);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    double final_time() const { return final_time_; }
    int nx() const { return nx_; }
    int nt() const { return nt_; }
    double hx() const { return hx_; }
    double ht() const { return ht_; }

    std::size_t space_count() const { return space_count_; }
    std::size_t node_count() const { return space_count_ * static_cast<std::size_t>(nt_); }

    std::size_t flat(std::size_t is, int it) const {
        return static_cast<std::size_t>(it) * space_count_ + is;
    }
    std::size_t space_index(std::size_t flat_index) const { return flat_index % space_count_; }
    int time_index(std::size_t flat_index) const {
        return static_cast<int>(flat_index / space_count_);
    }

    int axis_index(std::size_t is, int axis) const {
        return axis == 0 ? static_cast<int>(is % static_cast<std::size_t>(nx_))
                         : static_cast<int>(is / static_cast<std::size_t>(nx_));
    }
    double coord(std::size_t is, int axis) const {
        return -radius_ + hx_ * axis_index(is, axis);
    }
    std::array<double, 2> coords(std::size_t is) const {
        return {coord(is, 0), dim_ == 2 ? coord(is, 1) : 0.0};
    }
    double time(int it) const { return ht_ * it; }

    double spatial_radius(std::size_t is) const;

    /// |x| >= R: the node lies on or outside the sphere bounding the ball.
    bool lateral(std::size_t is) const {
        return spatial_radius(is) >= radius_ * (1.0 - kGeomTol);
    }
    /// Strictly inside the box, so every second-difference stencil exists.
    bool box_interior(std::size_t is) const {
        for (int axis = 0; axis < dim_; ++axis) {
            const int i = axis_index(is, axis);
            if (i == 0 || i == nx_ - 1) return false;
        }
        return true;
    }

    friend bool operator==(const Cylinder& a, const Cylinder& b) {
        return a.dim_ == b.dim_ && a.radius_ == b.radius_ && a.final_time_ == b.final_time_ &&
               a.nx_ == b.nx_ && a.nt_ == b.nt_;
    }

private:
    static constexpr double kGeomTol = 1e-12;

    int dim_;
    double radius_;
    double final_time_;
    int nx_;
    int nt_;
    double hx_;
    double ht_;
    std::size_t space_count_;
};

Cylinder build_cylinder(int dim, double radius, double final_time, int nx, int nt);

/// Real values on the nodes of a cylinder grid. Immutable after
/// construction; construction rejects NaN/Inf. Indexed (spatial node,
/// time level); evaluation outside a restriction set is by zero extension
/// (handled by the norm and estimate routines, not stored here).
class GridFunction {
public:
    explicit GridFunction(const Cylinder& grid);
    GridFunction(const Cylinder& grid, std::vector<double> values);

    using Sampler = std::function<double(const std::array<double, 2>&, double)>;
    static GridFunction sample(const Cylinder& grid, const Sampler& fn);

    const Cylinder& grid() const { return grid_; }
    double operator()(std::size_t is, int it) const { return values_[grid_.flat(is, it)]; }
    double at_flat(std::size_t flat_index) const { return values_[flat_index]; }
    std::span<const double> values() const { return values_; }

    double max_value() const;
    double min_value() const;

private:
    Cylinder grid_;
    std::vector<double> values_;
};

enum class NodeClass : std::uint8_t { Interior, Lateral, Initial, FinalInterior };

inline bool is_parabolic_boundary(NodeClass c) {
    return c == NodeClass::Lateral || c == NodeClass::Initial;
}

/// Classification of every node against the parabolic boundary of the
/// cylinder: the initial slice and the lateral sides carry Dirichlet data,
/// the final interior slice does not.
class ParabolicBoundaryMask {
public:
    explicit ParabolicBoundaryMask(const Cylinder& grid);

    const Cylinder& grid() const { return grid_; }
    NodeClass at(std::size_t is, int it) const { return flags_[grid_.flat(is, it)]; }
    NodeClass at_flat(std::size_t flat_index) const { return flags_[flat_index]; }
    std::span<const NodeClass> flags() const { return flags_; }

private:
    Cylinder grid_;
    std::vector<NodeClass> flags_;
};

ParabolicBoundaryMask parabolic_boundary(const Cylinder& grid);

/// Node subset of a cylinder; used for the positivity set {u > tol} and
/// for arbitrary norm restrictions.
class PositivitySet {
public:
    PositivitySet(const Cylinder& grid, std::vector<std::uint8_t> membership);

    static PositivitySet empty(const Cylinder& grid);
    static PositivitySet full(const Cylinder& grid);

    const Cylinder& grid() const { return grid_; }
    bool contains(std::size_t is, int it) const { return membership_[grid_.flat(is, it)] != 0; }
    bool contains_flat(std::size_t flat_index) const { return membership_[flat_index] != 0; }
    std::span<const std::uint8_t> membership() const { return membership_; }
    std::size_t count() const;

    PositivitySet intersect(const PositivitySet& other) const;

private:
    Cylinder grid_;
    std::vector<std::uint8_t> membership_;
};

PositivitySet positivity_set(const GridFunction& u, double tol_pos = 0.0);

/// Exact area of the disk |x| < R intersected with an axis-aligned
/// rectangle; closed form segment integrals, no sampling.
double disk_rectangle_intersection_area(double radius, double xl, double xr, double yl,
                                        double yr);

/// Spatial quadrature weight of a node: the measure of its node-centered
/// cell clipped against the ball. In 1D this reproduces the composite
/// trapezoid weights on [-R, R]; in 2D the clipped cells partition the
/// disk exactly, so constants integrate without boundary staircase error.
double node_cell_coverage(const Cylinder& grid, std::size_t is);

}  // namespace parmax
