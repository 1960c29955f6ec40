#include "parmax/operator_ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stencil.hpp"

namespace parmax {

namespace detail {

SpatialRow spatial_row(const OperatorCoefficients& op, std::size_t is, int it,
                       DriftScheme scheme, bool monotone_split) {
    const Cylinder& g = op.grid();
    const double hx = g.hx();
    const double inv_h2 = 1.0 / (hx * hx);
    const std::ptrdiff_t sx = 1;
    const std::ptrdiff_t sy = g.nx();

    SpatialRow row;

    // Second-order part: -a_ij D_i D_j u.
    if (g.dim() == 1) {
        const double a = op.a11(is, it);
        row.add(0, 2.0 * a * inv_h2);
        row.add(-sx, -a * inv_h2);
        row.add(+sx, -a * inv_h2);
    } else {
        const double a11 = op.a11(is, it);
        const double a22 = op.a22(is, it);
        const double a12 = op.a12(is, it);
        const double abs12 = std::abs(a12);
        if (monotone_split && abs12 <= std::min(a11, a22)) {
            // (a11-|a12|) D11 + (a22-|a12|) D22 + |a12| * diagonal second
            // difference along the direction matching the sign of a12.
            const double ax = a11 - abs12;
            const double ay = a22 - abs12;
            row.add(0, 2.0 * (ax + ay + abs12) * inv_h2);
            row.add(-sx, -ax * inv_h2);
            row.add(+sx, -ax * inv_h2);
            row.add(-sy, -ay * inv_h2);
            row.add(+sy, -ay * inv_h2);
            if (abs12 > 0.0) {
                if (a12 > 0.0) {
                    row.add(+sx + sy, -abs12 * inv_h2);
                    row.add(-sx - sy, -abs12 * inv_h2);
                } else {
                    row.add(+sx - sy, -abs12 * inv_h2);
                    row.add(-sx + sy, -abs12 * inv_h2);
                }
            }
        } else {
            row.add(0, 2.0 * (a11 + a22) * inv_h2);
            row.add(-sx, -a11 * inv_h2);
            row.add(+sx, -a11 * inv_h2);
            row.add(-sy, -a22 * inv_h2);
            row.add(+sy, -a22 * inv_h2);
            if (a12 != 0.0) {
                // -2 a12 D1D2 u by the four-point cross stencil.
                const double w = 2.0 * a12 / (4.0 * hx * hx);
                row.add(+sx + sy, -w);
                row.add(-sx - sy, -w);
                row.add(+sx - sy, +w);
                row.add(-sx + sy, +w);
                if (monotone_split) row.monotone = false;
            }
        }
    }

    // Drift: + b_i D_i u.
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double b = op.b_total(is, it, axis);
        if (b == 0.0) continue;
        const std::ptrdiff_t s = axis == 0 ? sx : sy;
        if (scheme == DriftScheme::Central) {
            row.add(+s, b / (2.0 * hx));
            row.add(-s, -b / (2.0 * hx));
        } else if (b > 0.0) {
            row.add(0, b / hx);
            row.add(-s, -b / hx);
        } else {
            row.add(0, -b / hx);
            row.add(+s, b / hx);
        }
    }

    row.add(0, op.c()(is, it));

    for (int k = 0; k < row.count; ++k) {
        const auto& e = row.entries[static_cast<std::size_t>(k)];
        if (e.offset != 0 && e.coeff > 0.0) row.monotone = false;
    }
    return row;
}

}  // namespace detail

OperatorApplication apply_operator(const OperatorCoefficients& op, const GridFunction& u,
                                   DriftScheme scheme) {
    const Cylinder& g = op.grid();
    if (!(u.grid() == g))
        throw std::invalid_argument("apply_operator: function grid does not match coefficients");

    std::vector<double> out(g.node_count(), 0.0);
    std::vector<std::uint8_t> defined(g.node_count(), 0);
    const double inv_ht = 1.0 / g.ht();

    for (int it = 1; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            if (!g.box_interior(is)) continue;
            const auto row = detail::spatial_row(op, is, it, scheme, /*monotone_split=*/false);
            double value = op.sigma()(is, it) * (u(is, it) - u(is, it - 1)) * inv_ht;
            for (int k = 0; k < row.count; ++k) {
                const auto& e = row.entries[static_cast<std::size_t>(k)];
                value += e.coeff * u(static_cast<std::size_t>(
                                         static_cast<std::ptrdiff_t>(is) + e.offset),
                                     it);
            }
            const std::size_t f = g.flat(is, it);
            out[f] = value;
            defined[f] = 1;
        }
    }
    return {GridFunction(g, std::move(out)), std::move(defined)};
}

std::string degeneracy_branch_name(DegeneracyBranch b) {
    switch (b) {
        case DegeneracyBranch::TracePositive: return "Sp(a) > 0";
        case DegeneracyBranch::SigmaPositive: return "sigma > 0";
        case DegeneracyBranch::CPositive: return "c > 0";
        case DegeneracyBranch::CPlusSigma: return "c + sigma > 0";
        case DegeneracyBranch::TracePlusC: return "Sp(a) + c > 0";
        case DegeneracyBranch::TracePlusSigma: return "Sp(a) + sigma > 0";
        case DegeneracyBranch::TraceSigmaC: return "Sp(a) + sigma + c > 0";
    }
    return "?";
}

DegeneracyReport check_degeneracy_condition(const OperatorCoefficients& op,
                                            const ExponentPair& e0) {
    const int n = op.dim();
    if (!e0.admissible(n))
        throw std::invalid_argument("inadmissible exponent pair: " + std::to_string(n) + "/p + 1/q = " +
                                    std::to_string(e0.scaling_sum(n)) + " > 1 for " + e0.str());

    const Exponent& p = e0.p;
    const Exponent& q = e0.q;
    const bool p_inf = p.is_infinite();
    const bool q_inf = q.is_infinite();
    const Exponent one = Exponent::integer(1);
    const Exponent dim_exp = Exponent::integer(n);

    DegeneracyBranch branch;
    if (!p_inf && p == dim_exp) {
        branch = DegeneracyBranch::TracePositive;
    } else if (!q_inf && q == one) {
        branch = DegeneracyBranch::SigmaPositive;
    } else if (p_inf && q_inf) {
        branch = DegeneracyBranch::CPositive;
    } else if (p_inf) {
        branch = DegeneracyBranch::CPlusSigma;  // 1 < q < inf
    } else if (q_inf) {
        branch = DegeneracyBranch::TracePlusC;  // n < p < inf
    } else if (e0.critical(n)) {
        branch = DegeneracyBranch::TracePlusSigma;
    } else {
        branch = DegeneracyBranch::TraceSigmaC;
    }

    const Cylinder& g = op.grid();
    DegeneracyReport report{branch, true, {}};
    for (int it = 0; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            double value = 0.0;
            switch (branch) {
                case DegeneracyBranch::TracePositive: value = op.trace_a(is, it); break;
                case DegeneracyBranch::SigmaPositive: value = op.sigma()(is, it); break;
                case DegeneracyBranch::CPositive: value = op.c()(is, it); break;
                case DegeneracyBranch::CPlusSigma:
                    value = op.c()(is, it) + op.sigma()(is, it);
                    break;
                case DegeneracyBranch::TracePlusC:
                    value = op.trace_a(is, it) + op.c()(is, it);
                    break;
                case DegeneracyBranch::TracePlusSigma:
                    value = op.trace_a(is, it) + op.sigma()(is, it);
                    break;
                case DegeneracyBranch::TraceSigmaC:
                    value = op.trace_a(is, it) + op.sigma()(is, it) + op.c()(is, it);
                    break;
            }
            if (!(value > 0.0)) report.violating_nodes.push_back(g.flat(is, it));
        }
    }
    report.pass = report.violating_nodes.empty();
    return report;
}

bool WeightField::any_infinite() const { return infinite_count() > 0; }

std::size_t WeightField::infinite_count() const {
    std::size_t n = 0;
    for (const auto f : infinite) n += (f != 0);
    return n;
}

GridFunction WeightField::as_grid_function() const {
    if (any_infinite())
        throw std::runtime_error("weight field holds flagged infinite values");
    return GridFunction(grid, values);
}

double pow_conv(double x, double e) {
    if (e == 0.0) return 1.0;  // includes 0^0 = 1
    if (x == 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(x, e);
}

WeightField drift_weight(const OperatorCoefficients& op, const ExponentPair& e, int part) {
    const int n = op.dim();
    if (!e.admissible(n))
        throw std::invalid_argument("drift_weight: inadmissible exponent pair " + e.str());
    if (part != kDriftTotal &&
        (part < 0 || static_cast<std::size_t>(part) >= op.part_count()))
        throw std::invalid_argument("drift_weight: drift part index out of range");

    const double inv_q = e.q.reciprocal();
    const double inv_p = e.p.reciprocal();
    const double c_expo = e.scaling_defect(n);  // <= 0, exactly 0 at critical pairs

    const Cylinder& g = op.grid();
    WeightField h{g, std::vector<double>(g.node_count(), 0.0),
                  std::vector<std::uint8_t>(g.node_count(), 0)};

    for (int it = 0; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            const std::size_t f = g.flat(is, it);
            const double babs = part == kDriftTotal
                                    ? op.abs_b_total(is, it)
                                    : op.abs_b_part(static_cast<std::size_t>(part), is, it);
            if (babs == 0.0) {
                h.values[f] = 0.0;  // 0/0 = 0: zero numerator wins
                continue;
            }
            const double w = pow_conv(op.sigma()(is, it), -inv_q) *
                             pow_conv(op.det_a(is, it), -inv_p) *
                             pow_conv(op.c()(is, it), c_expo);
            const double value = babs * w;
            if (std::isinf(value)) {
                h.values[f] = std::numeric_limits<double>::infinity();
                h.infinite[f] = 1;
            } else {
                h.values[f] = value;
            }
        }
    }
    return h;
}

RescaledProblem exp_rescale(const OperatorCoefficients& op, const GridFunction& u) {
    const Cylinder& g = op.grid();
    if (!(u.grid() == g))
        throw std::invalid_argument("exp_rescale: function grid does not match coefficients");
    const double kappa = op.kappa();

    std::vector<double> c_values(g.node_count());
    std::vector<double> v_values(g.node_count());
    for (int it = 0; it < g.nt(); ++it) {
        const double damp = std::exp(-kappa * g.time(it));
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            const std::size_t f = g.flat(is, it);
            c_values[f] = op.c()(is, it) + kappa * op.sigma()(is, it);
            v_values[f] = damp * u(is, it);
        }
    }
    return {op.with_c(GridFunction(g, std::move(c_values)), 0.0),
            GridFunction(g, std::move(v_values)), std::exp(kappa * g.final_time())};
}

}  // namespace parmax
