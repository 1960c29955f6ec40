#pragma once

#include <functional>
#include <vector>

#include "parmax/coefficients.hpp"
#include "parmax/grid.hpp"
#include "parmax/operator_ops.hpp"

namespace parmax {

/// Piecewise-linear radial profile on [0, r_max].
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> value;

    double eval(double rr) const;
    double max_value() const;
};

/// Convex radial barrier from the Monge-Ampere reduction: v <= 0 with
/// v(r_outer) = 0, v'(0) = 0 and v' nondecreasing; B = -v >= 0.
struct RadialBarrier {
    double r_outer = 0.0;
    std::vector<double> r;
    std::vector<double> v;      // profile, <= 0
    std::vector<double> slope;  // v' = psi^{1/n}, >= 0 nondecreasing
    RadialProfile source;       // the radial majorant f

    double sup_barrier() const { return -v.front(); }      // |v(0)|
    double sup_slope() const { return slope.back(); }
    /// B(rr) = -v(rr), zero beyond r_outer.
    double barrier_at(double rr) const;
    double slope_at(double rr) const;
};

/// Integrates psi' = n r^{n-1} (2/n)^n f^n (1 + psi^{2/n})^{n/2}, psi(0)=0,
/// with classical RK4, accumulating v' = psi^{1/n} and its integral in the
/// same sweep, then shifts so that v(r_outer) = 0.
RadialBarrier solve_radial_monge_ampere(const std::function<double(double)>& source, int dim,
                                        double r_outer, int steps = 2048);

/// Radial majorant of the drift weight: bucketed time-sup of h by radius,
/// inflated by `margin`. Throws when h carries flagged infinities.
RadialProfile radial_majorant_from_weight(const WeightField& h, double r_outer,
                                          double margin = 0.01, int buckets = 0);

enum class BarrierTarget { TraceA, AbsDrift };

struct BarrierVerdict {
    bool pass;
    double min_slack;  // min over interior nodes of LB - target
    std::size_t argmin_flat;
    double tol;
};

double default_tol_barrier(const Cylinder& grid);  // 10 (hx + ht)

/// Checks LB >= Sp(a) or LB >= |b| nodewise at interior nodes.
BarrierVerdict verify_barrier_inequality(const OperatorCoefficients& op, const GridFunction& B,
                                         BarrierTarget target, double tol = -1.0,
                                         DriftScheme scheme = DriftScheme::Central);

/// Samples B(x) = -v(|x|) onto the cylinder grid (time-independent).
GridFunction sample_radial_barrier(const RadialBarrier& barrier, const Cylinder& grid);

/// B = B1 + B_tail * (1 + max |v'|), the two-part barrier composition.
GridFunction compose_barriers(const RadialBarrier& b1, const GridFunction& b_tail);

}  // namespace parmax
