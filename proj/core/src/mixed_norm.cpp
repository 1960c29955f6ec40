#include "parmax/mixed_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace parmax {
namespace {

std::vector<double> time_quadrature_weights(const Cylinder& g) {
    std::vector<double> w(static_cast<std::size_t>(g.nt()), g.ht());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

// Per-node spatial weight: measure of the node cell clipped to the ball.
std::vector<double> space_quadrature_weights(const Cylinder& g) {
    std::vector<double> w(g.space_count(), 0.0);
    for (std::size_t is = 0; is < g.space_count(); ++is) w[is] = node_cell_coverage(g, is);
    return w;
}

struct NormInputs {
    const Cylinder& grid;
    std::span<const double> values;
    const GridFunction* weight;
    const PositivitySet* restriction;

    double integrand(std::size_t is, int it) const {
        const std::size_t f = grid.flat(is, it);
        if (restriction && !restriction->contains_flat(f)) return 0.0;
        const double v = std::abs(values[f]);
        return weight ? std::abs((*weight)(is, it)) * v : v;
    }
};

}  // namespace

NormOrder resolve_order(const ExponentPair& exps, NormOrder requested) {
    if (requested != NormOrder::Auto) return requested;
    if (exps.p < exps.q) return NormOrder::SpaceOuter;
    if (exps.q < exps.p) return NormOrder::TimeOuter;
    return NormOrder::SpaceOuter;  // p = q: the orders coincide
}

double mixed_norm_raw(const Cylinder& grid, std::span<const double> values,
                      const MixedNormSpec& spec) {
    if (values.size() != grid.node_count())
        throw std::invalid_argument("mixed_norm: value count does not match the grid");
    if (spec.weight && !(spec.weight->grid() == grid))
        throw std::invalid_argument("mixed_norm: weight grid mismatch");
    if (spec.restriction && !(spec.restriction->grid() == grid))
        throw std::invalid_argument("mixed_norm: restriction grid mismatch");

    const auto swt = space_quadrature_weights(grid);
    const auto twt = time_quadrature_weights(grid);

    if (spec.weight) {
        for (int it = 0; it < grid.nt(); ++it) {
            for (std::size_t is = 0; is < grid.space_count(); ++is) {
                if (swt[is] == 0.0) continue;
                if (spec.restriction && !spec.restriction->contains(is, it)) continue;
                if (!((*spec.weight)(is, it) > 0.0))
                    throw std::invalid_argument(
                        "mixed_norm: weight must be positive on the integration set");
            }
        }
    }

    const NormInputs in{grid, values, spec.weight ? &*spec.weight : nullptr,
                        spec.restriction ? &*spec.restriction : nullptr};
    const NormOrder order = resolve_order(spec.exps, spec.order);
    const bool p_inf = spec.exps.p.is_infinite();
    const bool q_inf = spec.exps.q.is_infinite();
    const double p = spec.exps.p.value();
    const double q = spec.exps.q.value();

    if (order == NormOrder::SpaceOuter) {
        double outer_sum = 0.0;
        double outer_max = 0.0;
        for (std::size_t is = 0; is < grid.space_count(); ++is) {
            if (swt[is] == 0.0) continue;
            double inner;
            if (q_inf) {
                inner = 0.0;
                for (int it = 0; it < grid.nt(); ++it)
                    inner = std::max(inner, in.integrand(is, it));
            } else {
                double s = 0.0;
                for (int it = 0; it < grid.nt(); ++it) {
                    const double v = in.integrand(is, it);
                    if (v != 0.0) s += twt[static_cast<std::size_t>(it)] * std::pow(v, q);
                }
                inner = std::pow(s, 1.0 / q);
            }
            if (p_inf) {
                outer_max = std::max(outer_max, inner);
            } else if (inner != 0.0) {
                outer_sum += swt[is] * std::pow(inner, p);
            }
        }
        return p_inf ? outer_max : std::pow(outer_sum, 1.0 / p);
    }

    double outer_sum = 0.0;
    double outer_max = 0.0;
    for (int it = 0; it < grid.nt(); ++it) {
        double inner;
        if (p_inf) {
            inner = 0.0;
            for (std::size_t is = 0; is < grid.space_count(); ++is) {
                if (swt[is] == 0.0) continue;
                inner = std::max(inner, in.integrand(is, it));
            }
        } else {
            double s = 0.0;
            for (std::size_t is = 0; is < grid.space_count(); ++is) {
                if (swt[is] == 0.0) continue;
                const double v = in.integrand(is, it);
                if (v != 0.0) s += swt[is] * std::pow(v, p);
            }
            inner = std::pow(s, 1.0 / p);
        }
        if (q_inf) {
            outer_max = std::max(outer_max, inner);
        } else if (inner != 0.0) {
            outer_sum += twt[static_cast<std::size_t>(it)] * std::pow(inner, q);
        }
    }
    return q_inf ? outer_max : std::pow(outer_sum, 1.0 / q);
}

double mixed_norm(const GridFunction& u, const MixedNormSpec& spec) {
    return mixed_norm_raw(u.grid(), u.values(), spec);
}

double mixed_norm_oracle(const GridFunction& u, const MixedNormSpec& spec) {
    const Cylinder& g = u.grid();
    if (g.node_count() > 100000)
        throw std::invalid_argument("mixed_norm_oracle: grid too large (limit 1e5 nodes)");
    if (spec.weight && !(spec.weight->grid() == g))
        throw std::invalid_argument("mixed_norm_oracle: weight grid mismatch");
    if (spec.restriction && !(spec.restriction->grid() == g))
        throw std::invalid_argument("mixed_norm_oracle: restriction grid mismatch");

    const NormOrder order = resolve_order(spec.exps, spec.order);

    // Everything below is written straight from the definition: per-node
    // trapezoid factors recomputed inline, one explicit loop per integral.
    const auto node_value = [&](std::size_t is, int it) -> double {
        if (spec.restriction && !spec.restriction->contains(is, it)) return 0.0;
        double v = std::abs(u(is, it));
        if (spec.weight) v *= std::abs((*spec.weight)(is, it));
        return v;
    };
    const auto time_factor = [&](int it) -> double {
        return (it == 0 || it == g.nt() - 1) ? 0.5 * g.ht() : g.ht();
    };
    const auto space_factor = [&](std::size_t is) -> double { return node_cell_coverage(g, is); };
    const auto lp_over_time = [&](std::size_t is, const Exponent& e) -> double {
        if (e.is_infinite()) {
            double m = 0.0;
            for (int it = 0; it < g.nt(); ++it) m = std::max(m, node_value(is, it));
            return m;
        }
        double s = 0.0;
        for (int it = 0; it < g.nt(); ++it) {
            const double v = node_value(is, it);
            if (v != 0.0) s += time_factor(it) * std::pow(v, e.value());
        }
        return std::pow(s, 1.0 / e.value());
    };
    const auto lp_over_space = [&](int it, const Exponent& e) -> double {
        if (e.is_infinite()) {
            double m = 0.0;
            for (std::size_t is = 0; is < g.space_count(); ++is)
                if (space_factor(is) > 0.0) m = std::max(m, node_value(is, it));
            return m;
        }
        double s = 0.0;
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            const double w = space_factor(is);
            const double v = node_value(is, it);
            if (w != 0.0 && v != 0.0) s += w * std::pow(v, e.value());
        }
        return std::pow(s, 1.0 / e.value());
    };

    if (order == NormOrder::SpaceOuter) {
        if (spec.exps.p.is_infinite()) {
            double m = 0.0;
            for (std::size_t is = 0; is < g.space_count(); ++is)
                if (space_factor(is) > 0.0) m = std::max(m, lp_over_time(is, spec.exps.q));
            return m;
        }
        double s = 0.0;
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            const double w = space_factor(is);
            if (w == 0.0) continue;
            const double inner = lp_over_time(is, spec.exps.q);
            if (inner != 0.0) s += w * std::pow(inner, spec.exps.p.value());
        }
        return std::pow(s, 1.0 / spec.exps.p.value());
    }

    if (spec.exps.q.is_infinite()) {
        double m = 0.0;
        for (int it = 0; it < g.nt(); ++it) m = std::max(m, lp_over_space(it, spec.exps.p));
        return m;
    }
    double s = 0.0;
    for (int it = 0; it < g.nt(); ++it) {
        const double inner = lp_over_space(it, spec.exps.p);
        if (inner != 0.0) s += time_factor(it) * std::pow(inner, spec.exps.q.value());
    }
    return std::pow(s, 1.0 / spec.exps.q.value());
}

EmbeddingCheck embedding_check(const GridFunction& u, const Exponent& p, const Exponent& q) {
    if (p.is_infinite() || q.is_infinite() || !(p < q))
        throw std::invalid_argument("embedding_check requires finite p < q");
    MixedNormSpec spec = MixedNormSpec::plain(p, q);
    spec.order = NormOrder::SpaceOuter;
    const double space_outer = mixed_norm(u, spec);
    spec.order = NormOrder::TimeOuter;
    const double time_outer = mixed_norm(u, spec);
    const double slack = 1e-12 * (1.0 + space_outer);
    return {space_outer, time_outer, time_outer <= space_outer + slack};
}

}  // namespace parmax
