#include "parmax/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parmax {
namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto hi = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(hi - xs.begin());
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - w) * ys[i - 1] + w * ys[i];
}

}  // namespace

double RadialProfile::eval(double rr) const { return interp(r, value, rr); }

double RadialProfile::max_value() const {
    return *std::max_element(value.begin(), value.end());
}

double RadialBarrier::barrier_at(double rr) const {
    if (rr >= r_outer) return 0.0;
    return -interp(r, v, rr);
}

double RadialBarrier::slope_at(double rr) const {
    if (rr >= r_outer) return 0.0;
    return interp(r, slope, rr);
}

RadialBarrier solve_radial_monge_ampere(const std::function<double(double)>& source, int dim,
                                        double r_outer, int steps) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("radial barrier: dim must be 1 or 2");
    if (!(r_outer > 0.0)) throw std::invalid_argument("radial barrier: r_outer must be positive");
    if (steps < 2) throw std::invalid_argument("radial barrier: need at least 2 steps");

    const double n = dim;
    const double factor = std::pow(2.0 / n, n);
    const double h = r_outer / steps;

    // y = (psi, V): psi' as in the reduction, V' = psi^{1/n}.
    const auto rhs = [&](double r, double psi, double& dpsi, double& dV) {
        const double f = source(r);
        if (f < 0.0) throw std::invalid_argument("radial barrier: source must be nonnegative");
        const double psi_pos = std::max(psi, 0.0);
        dpsi = n * std::pow(r, n - 1.0) * factor * std::pow(f, n) *
               std::pow(1.0 + std::pow(psi_pos, 2.0 / n), n / 2.0);
        dV = std::pow(psi_pos, 1.0 / n);
    };

    RadialBarrier out;
    out.r_outer = r_outer;
    out.r.resize(static_cast<std::size_t>(steps) + 1);
    out.v.resize(out.r.size());
    out.slope.resize(out.r.size());

    double psi = 0.0;
    double V = 0.0;
    out.r[0] = 0.0;
    out.v[0] = 0.0;  // shifted below
    out.slope[0] = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double r0 = i * h;
        double k1p, k1v, k2p, k2v, k3p, k3v, k4p, k4v;
        rhs(r0, psi, k1p, k1v);
        rhs(r0 + 0.5 * h, psi + 0.5 * h * k1p, k2p, k2v);
        rhs(r0 + 0.5 * h, psi + 0.5 * h * k2p, k3p, k3v);
        rhs(r0 + h, psi + h * k3p, k4p, k4v);
        psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        V += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(psi) || !std::isfinite(V))
            throw std::runtime_error(
                "radial barrier: profile overflowed, refine steps or shrink the source");
        const std::size_t j = static_cast<std::size_t>(i) + 1;
        out.r[j] = (i + 1) * h;
        out.v[j] = V;
        out.slope[j] = std::pow(std::max(psi, 0.0), 1.0 / n);
    }

    const double v_end = out.v.back();
    for (auto& value : out.v) value -= v_end;  // v(r_outer) = 0, v <= 0

    const int samples = std::min(steps, 512);
    out.source.r.resize(static_cast<std::size_t>(samples) + 1);
    out.source.value.resize(out.source.r.size());
    for (int i = 0; i <= samples; ++i) {
        const double rr = r_outer * i / samples;
        out.source.r[static_cast<std::size_t>(i)] = rr;
        out.source.value[static_cast<std::size_t>(i)] = source(rr);
    }
    return out;
}

RadialProfile radial_majorant_from_weight(const WeightField& h, double r_outer, double margin,
                                          int buckets) {
    if (h.any_infinite())
        throw std::invalid_argument("radial majorant: drift weight has flagged infinities");
    const Cylinder& g = h.grid;
    if (buckets <= 0) buckets = 4 * g.nx();
    const double dr = r_outer / buckets;

    // Time-sup of h per node, folded into radial buckets.
    std::vector<double> bucket_max(static_cast<std::size_t>(buckets) + 1, -1.0);
    for (std::size_t is = 0; is < g.space_count(); ++is) {
        const double r = g.spatial_radius(is);
        if (r > r_outer) continue;
        double sup_t = 0.0;
        for (int it = 0; it < g.nt(); ++it) sup_t = std::max(sup_t, h.at(is, it));
        const auto j = static_cast<std::size_t>(std::min<double>(buckets, std::floor(r / dr)));
        bucket_max[j] = std::max(bucket_max[j], sup_t);
    }
    // Fill empty buckets from the nearest populated neighbors.
    for (std::size_t j = 0; j < bucket_max.size(); ++j) {
        if (bucket_max[j] >= 0.0) continue;
        double filled = 0.0;
        for (std::size_t d = 1; d < bucket_max.size(); ++d) {
            if (j >= d && bucket_max[j - d] >= 0.0) {
                filled = bucket_max[j - d];
                break;
            }
            if (j + d < bucket_max.size() && bucket_max[j + d] >= 0.0) {
                filled = bucket_max[j + d];
                break;
            }
        }
        bucket_max[j] = filled;
    }

    RadialProfile profile;
    profile.r.resize(bucket_max.size());
    profile.value.resize(bucket_max.size());
    for (std::size_t j = 0; j < bucket_max.size(); ++j) {
        profile.r[j] = dr * static_cast<double>(j);
        // Window over adjacent buckets keeps the profile above h between nodes.
        double m = bucket_max[j];
        if (j > 0) m = std::max(m, bucket_max[j - 1]);
        if (j + 1 < bucket_max.size()) m = std::max(m, bucket_max[j + 1]);
        profile.value[j] = (1.0 + margin) * m;
    }
    return profile;
}

double default_tol_barrier(const Cylinder& g) { return 10.0 * (g.hx() + g.ht()); }

BarrierVerdict verify_barrier_inequality(const OperatorCoefficients& op, const GridFunction& B,
                                         BarrierTarget target, double tol, DriftScheme scheme) {
    const Cylinder& g = op.grid();
    if (!(B.grid() == g))
        throw std::invalid_argument("verify_barrier_inequality: grid mismatch");
    if (tol < 0.0) tol = default_tol_barrier(g);

    const OperatorApplication lb = apply_operator(op, B, scheme);
    double min_slack = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    for (int it = 1; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            if (!lb.defined_at(is, it) || g.lateral(is)) continue;
            const double want = target == BarrierTarget::TraceA ? op.trace_a(is, it)
                                                                : op.abs_b_total(is, it);
            const double slack = lb.values(is, it) - want;
            if (slack < min_slack) {
                min_slack = slack;
                argmin = g.flat(is, it);
            }
        }
    }
    return {min_slack >= -tol, min_slack, argmin, tol};
}

GridFunction sample_radial_barrier(const RadialBarrier& barrier, const Cylinder& grid) {
    return GridFunction::sample(grid, [&](const std::array<double, 2>& x, double) {
        return barrier.barrier_at(std::hypot(x[0], x[1]));
    });
}

GridFunction compose_barriers(const RadialBarrier& b1, const GridFunction& b_tail) {
    const Cylinder& g = b_tail.grid();
    const double corner = g.radius() * std::sqrt(static_cast<double>(g.dim()));
    if (b1.r_outer < g.radius())
        throw std::invalid_argument("compose_barriers: radial barrier does not cover the ball");
    (void)corner;  // the profile is zero-extended past r_outer by construction
    double tail_scale = 0.0;
    for (const double v : b_tail.values()) tail_scale = std::max(tail_scale, std::abs(v));
    for (const double v : b_tail.values())
        if (v < -1e-12 * (1.0 + tail_scale))
            throw std::invalid_argument("compose_barriers: tail barrier must be nonnegative");

    const double amp = 1.0 + b1.sup_slope();
    std::vector<double> values(g.node_count());
    for (int it = 0; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            values[g.flat(is, it)] = b1.barrier_at(g.spatial_radius(is)) +
                                     amp * std::max(b_tail(is, it), 0.0);
        }
    }
    return GridFunction(g, std::move(values));
}

}  // namespace parmax
