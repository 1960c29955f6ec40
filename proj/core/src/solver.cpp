#include "parmax/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "banded.hpp"
#include "stencil.hpp"

namespace parmax {
namespace {

struct AssembledLevel {
    // Per spatial node: implicit row as (column, coefficient) pairs,
    // including the sigma/ht diagonal term. Lateral rows are identity.
    std::vector<std::vector<std::pair<int, double>>> rows;
    bool monotone = true;
};

AssembledLevel assemble_level(const OperatorCoefficients& op, int it, const SchemeConfig& cfg) {
    const Cylinder& g = op.grid();
    const double inv_ht = 1.0 / g.ht();
    AssembledLevel lvl;
    lvl.rows.resize(g.space_count());

    for (std::size_t is = 0; is < g.space_count(); ++is) {
        auto& row = lvl.rows[is];
        if (g.lateral(is)) {
            row.emplace_back(static_cast<int>(is), 1.0);
            continue;
        }
        const double sigma = op.sigma()(is, it);
        if (!(sigma > 0.0))
            throw std::invalid_argument("solve_forward: sigma must be positive at interior nodes");
        const auto sp = detail::spatial_row(op, is, it, cfg.drift, /*monotone_split=*/true);
        double diag = sigma * inv_ht;
        row.reserve(static_cast<std::size_t>(sp.count) + 1);
        for (int k = 0; k < sp.count; ++k) {
            const auto& e = sp.entries[static_cast<std::size_t>(k)];
            if (e.offset == 0) {
                diag += cfg.theta * e.coeff;
            } else {
                row.emplace_back(static_cast<int>(static_cast<std::ptrdiff_t>(is) + e.offset),
                                 cfg.theta * e.coeff);
            }
        }
        row.emplace_back(static_cast<int>(is), diag);

        // M-matrix bookkeeping: nonpositive off-diagonals and positive row sum.
        if (!sp.monotone || cfg.theta != 1.0 || cfg.drift != DriftScheme::Upwind) lvl.monotone = false;
        if (!(sigma * inv_ht + op.c()(is, it) > 0.0)) lvl.monotone = false;
    }
    return lvl;
}

double explicit_part(const OperatorCoefficients& op, std::span<const double> u_flat,
                     int it_prev, std::size_t is, const SchemeConfig& cfg) {
    const Cylinder& g = op.grid();
    const auto sp = detail::spatial_row(op, is, it_prev, cfg.drift, /*monotone_split=*/true);
    double s = 0.0;
    for (int k = 0; k < sp.count; ++k) {
        const auto& e = sp.entries[static_cast<std::size_t>(k)];
        s += e.coeff *
             u_flat[g.flat(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(is) + e.offset),
                           it_prev)];
    }
    return s;
}

long gauss_seidel(const AssembledLevel& lvl, std::span<const double> rhs,
                  std::span<double> x, const IterativeConfig& cfg) {
    const std::size_t n = lvl.rows.size();
    double rhs_scale = 0.0;
    for (const double v : rhs) rhs_scale = std::max(rhs_scale, std::abs(v));
    long sweeps = 0;
    for (; sweeps < cfg.max_iter; ++sweeps) {
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double diag = 0.0;
            double off = 0.0;
            for (const auto& [j, v] : lvl.rows[i]) {
                if (static_cast<std::size_t>(j) == i)
                    diag += v;
                else
                    off += v * x[static_cast<std::size_t>(j)];
            }
            const double xi = (rhs[i] - off) / diag;
            max_delta = std::max(max_delta, std::abs(xi - x[i]));
            x[i] = xi;
        }
        if (max_delta <= cfg.tol * (rhs_scale + 1.0)) return sweeps + 1;
    }
    throw std::runtime_error("iterative linear solver did not converge within max_iter sweeps");
}

}  // namespace

SolveResult solve_forward(const OperatorCoefficients& op, const GridFunction& f,
                          const SchemeConfig& cfg) {
    const Cylinder& g = op.grid();
    if (!(f.grid() == g))
        throw std::invalid_argument("solve_forward: forcing grid does not match coefficients");
    if (cfg.theta < 0.0 || cfg.theta > 1.0)
        throw std::invalid_argument("solve_forward: theta must lie in [0,1]");

    const int ns = static_cast<int>(g.space_count());
    const int band = g.dim() == 1 ? 1 : g.nx() + 1;
    const double inv_ht = 1.0 / g.ht();

    std::vector<double> u(g.node_count(), 0.0);  // zero initial + lateral data
    std::vector<double> rhs(static_cast<std::size_t>(ns));
    double residual_inf = 0.0;
    bool monotone = true;
    long iterations = 0;

    detail::BandedSystem direct(ns, band, band);
    AssembledLevel lvl;
    const bool reuse = op.time_independent();

    for (int it = 1; it < g.nt(); ++it) {
        const bool rebuild = it == 1 || !reuse;
        if (rebuild) {
            lvl = assemble_level(op, it, cfg);
            if (cfg.linear == SchemeConfig::Linear::BandedDirect) {
                direct.clear();
                for (int i = 0; i < ns; ++i)
                    for (const auto& [j, v] : lvl.rows[static_cast<std::size_t>(i)])
                        direct.add(i, j, v);
                direct.factor();
            }
        }
        monotone = monotone && lvl.monotone;

        for (int i = 0; i < ns; ++i) {
            const auto is = static_cast<std::size_t>(i);
            if (g.lateral(is)) {
                rhs[is] = 0.0;
                continue;
            }
            double r = op.sigma()(is, it) * inv_ht * u[g.flat(is, it - 1)];
            r += cfg.theta * f(is, it) + (1.0 - cfg.theta) * f(is, it - 1);
            if (cfg.theta < 1.0) r -= (1.0 - cfg.theta) * explicit_part(op, u, it - 1, is, cfg);
            rhs[is] = r;
        }

        std::vector<double> x = rhs;
        if (cfg.linear == SchemeConfig::Linear::BandedDirect) {
            direct.solve(x);
        } else {
            std::fill(x.begin(), x.end(), 0.0);
            for (int i = 0; i < ns; ++i)
                x[static_cast<std::size_t>(i)] = u[g.flat(static_cast<std::size_t>(i), it - 1)];
            iterations += gauss_seidel(lvl, rhs, x, cfg.iterative);
        }

        for (int i = 0; i < ns; ++i) {
            double ax = 0.0;
            for (const auto& [j, v] : lvl.rows[static_cast<std::size_t>(i)])
                ax += v * x[static_cast<std::size_t>(j)];
            residual_inf = std::max(residual_inf, std::abs(ax - rhs[static_cast<std::size_t>(i)]));
        }
        for (int i = 0; i < ns; ++i) u[g.flat(static_cast<std::size_t>(i), it)] = x[static_cast<std::size_t>(i)];
    }

    return {GridFunction(g, std::move(u)), residual_inf, monotone, iterations};
}

SolveResult solve_barrier_problem(const OperatorCoefficients& op, const GridFunction& rhs,
                                  const SchemeConfig& cfg) {
    return solve_forward(op, rhs, cfg);
}

}  // namespace parmax
