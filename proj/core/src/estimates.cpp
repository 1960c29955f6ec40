#include "parmax/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parmax {
namespace {

constexpr double kBoundaryTol = 1e-10;

void require_admissible(const ExponentPair& e, int dim, const char* where) {
    if (!e.admissible(dim))
        throw std::invalid_argument(std::string(where) + ": inadmissible exponent pair " +
                                    e.str() + " (n/p + 1/q > 1)");
}

}  // namespace

double estimate_rhs(const OperatorCoefficients& op, const GridFunction& u,
                    const ExponentPair& e0, double exclude_core_radius) {
    const Cylinder& g = op.grid();
    const int n = g.dim();
    require_admissible(e0, n, "estimate_rhs");
    if (!(u.grid() == g)) throw std::invalid_argument("estimate_rhs: grid mismatch");

    const ParabolicBoundaryMask mask(g);
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        if (is_parabolic_boundary(mask.at_flat(f)) && u.at_flat(f) > kBoundaryTol)
            throw std::invalid_argument(
                "estimate_rhs: u must be <= 0 on the parabolic boundary");
    }

    const OperatorApplication lu = apply_operator(op, u, DriftScheme::Central);

    const double inv_p = e0.p.reciprocal();
    const double inv_q = e0.q.reciprocal();
    const double c_expo = -e0.scaling_defect(n);  // >= 0, exactly 0 at critical pairs

    std::vector<double> integrand(g.node_count(), 0.0);
    std::vector<std::uint8_t> member(g.node_count(), 0);
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        if (!lu.defined[f] || !(u.at_flat(f) > 0.0)) continue;
        if (exclude_core_radius > 0.0 &&
            g.spatial_radius(g.space_index(f)) < exclude_core_radius)
            continue;
        member[f] = 1;
        const double lu_pos = std::max(lu.values.at_flat(f), 0.0);
        if (lu_pos == 0.0) continue;  // 0/0 = 0
        const std::size_t is = g.space_index(f);
        const int it = g.time_index(f);
        const double w = pow_conv(op.sigma()(is, it), inv_q) *
                         pow_conv(op.det_a(is, it), inv_p) *
                         pow_conv(op.c()(is, it), c_expo);
        integrand[f] = w == 0.0 ? std::numeric_limits<double>::infinity() : lu_pos / w;
    }

    MixedNormSpec spec;
    spec.exps = e0;
    spec.restriction = PositivitySet(g, std::move(member));
    return mixed_norm_raw(g, integrand, spec);
}

EstimateReport verify_bound(const OperatorCoefficients& op, const GridFunction& f,
                            const ExponentPair& e0, const std::vector<ExponentPair>& e1_list,
                            const SchemeConfig& scheme, double exclude_core_radius) {
    const Cylinder& g = op.grid();
    const int n = g.dim();
    require_admissible(e0, n, "verify_bound");
    for (const auto& e1 : e1_list) require_admissible(e1, n, "verify_bound");
    if (op.part_count() >= 2 && !e1_list.empty() && e1_list.size() != op.part_count())
        throw std::invalid_argument(
            "verify_bound: composite drift needs one exponent pair per part");

    const SolveResult solved = solve_forward(op, f, scheme);

    // Linear-algebra roundoff can leave a positive dust of order 1e-14 on
    // a solution that is nonpositive in exact arithmetic; suprema below
    // this floor count as zero.
    double f_scale = 0.0;
    for (const double v : f.values()) f_scale = std::max(f_scale, std::abs(v));
    const double sup_floor = 1e-12 * (1.0 + f_scale);
    const auto positive_sup = [&](double raw) { return raw > sup_floor ? raw : 0.0; };

    EstimateReport report{.grid = g, .exponents = e0};
    report.solver_residual = solved.residual_inf;
    report.monotone_guaranteed = solved.monotone_guaranteed;
    report.lhs_sup_original = positive_sup(solved.u.max_value());

    const bool rescaled = op.kappa() > 0.0;
    OperatorCoefficients work_op = op;
    GridFunction work_fn = solved.u;
    if (rescaled) {
        RescaledProblem r = exp_rescale(op, solved.u);
        work_op = std::move(r.op);
        work_fn = std::move(r.v);
        report.rescale_factor = r.factor;
        const double slack = 1.0 + 10.0 * (g.hx() + g.ht());
        report.rescale_chain_ok =
            report.lhs_sup_original <=
            report.rescale_factor * positive_sup(work_fn.max_value()) * slack + sup_floor;
    }

    report.degeneracy = check_degeneracy_condition(work_op, e0);
    report.lhs_sup = positive_sup(work_fn.max_value());
    report.rhs_norm = estimate_rhs(work_op, work_fn, e0, exclude_core_radius);

    const PositivitySet q_set = positivity_set(work_fn);
    report.positivity_count = q_set.count();

    bool drift_finite = true;
    const auto norm_of_part = [&](int part, const ExponentPair& e1) {
        const WeightField h = drift_weight(work_op, e1, part);
        MixedNormSpec spec;
        spec.exps = e1;
        spec.restriction = q_set;
        const double norm = mixed_norm_raw(g, h.values, spec);
        const bool infinite = std::isinf(norm);
        drift_finite = drift_finite && !infinite;
        report.drift_norms.push_back({part, e1, norm, infinite});
    };
    if (op.part_count() >= 2 && e1_list.size() == op.part_count()) {
        for (std::size_t k = 0; k < e1_list.size(); ++k)
            norm_of_part(static_cast<int>(k), e1_list[k]);
    } else {
        for (const auto& e1 : e1_list) norm_of_part(kDriftTotal, e1);
    }

    if (report.rhs_norm > 0.0) {
        report.ratio = report.lhs_sup / report.rhs_norm;
    } else {
        report.ratio = report.lhs_sup == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    report.hypotheses_valid = report.degeneracy.pass && drift_finite;
    return report;
}

double default_tol_bony(const Cylinder& g) { return 10.0 * (g.hx() + g.ht()); }

BonyResult bony_check(const OperatorCoefficients& op, const GridFunction& u, double tol_bony) {
    const Cylinder& g = op.grid();
    if (!(u.grid() == g)) throw std::invalid_argument("bony_check: grid mismatch");
    if (tol_bony < 0.0) tol_bony = default_tol_bony(g);

    BonyResult result{false, 0, u.max_value(), 0.0, tol_bony, false};
    if (result.max_value < 0.0) return result;  // no nonnegative maximum

    const auto interior = [&](std::size_t is, int it) {
        return g.box_interior(is) && !g.lateral(is) && it > 0 && it < g.nt() - 1;
    };

    const double match = result.max_value - 1e-12 * (1.0 + std::abs(result.max_value));
    bool interior_max = false;
    for (int it = 0; it < g.nt() && !interior_max; ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            if (u(is, it) >= match && interior(is, it)) {
                interior_max = true;
                result.max_flat = g.flat(is, it);
                break;
            }
        }
    }
    if (!interior_max) return result;  // maximum only on the boundary
    result.applicable = true;

    const OperatorApplication lu = apply_operator(op, u, DriftScheme::Central);
    double sup = -std::numeric_limits<double>::infinity();
    for (int it = 1; it < g.nt(); ++it) {
        for (std::size_t is = 0; is < g.space_count(); ++is) {
            if (!lu.defined_at(is, it) || g.lateral(is)) continue;
            const double denom =
                op.trace_a(is, it) + op.sigma()(is, it) + op.c()(is, it);
            if (!(denom > 0.0)) continue;
            sup = std::max(sup, lu.values(is, it) / denom);
        }
    }
    result.normalized_sup = sup;
    result.pass = sup >= -tol_bony;
    return result;
}

double radial_drift_mixed_norm_exact(int dim, double radius, double alpha, double strength,
                                     double eps) {
    if (!(eps > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("radial integral needs positive radius and eps");
    const double n = dim;
    // integrand (r / max(r,eps)^alpha)^n r^{n-1}; surface constants 2 and 2 pi.
    const double r_core = std::min(eps, radius);
    double integral = std::pow(eps, -n * alpha) * std::pow(r_core, 2.0 * n) / (2.0 * n);
    if (radius > eps) {
        const double expo = n * (2.0 - alpha) - 1.0;
        if (std::abs(expo + 1.0) < 1e-14) {
            integral += std::log(radius / eps);
        } else {
            integral += (std::pow(radius, expo + 1.0) - std::pow(eps, expo + 1.0)) / (expo + 1.0);
        }
    }
    const double surface = dim == 1 ? 2.0 : 2.0 * M_PI;
    return strength * std::pow(surface * integral, 1.0 / n);
}

CounterexampleReport counterexample_remark41(double alpha, const Cylinder& grid,
                                             double eps_sing) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::invalid_argument("counterexample: alpha must lie in (0, 2]");
    if (eps_sing < 0.0) eps_sing = default_eps_sing(grid);
    const int n = grid.dim();
    const double strength = n + 1;

    const OperatorCoefficients op =
        make_singular_drift(grid, alpha, strength, eps_sing, /*c0=*/1.0);

    const GridFunction U = GridFunction::sample(grid, [&](const std::array<double, 2>& x, double t) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return 2.0 * t - t * t - r2 - 0.5;
    });

    CounterexampleReport report{.grid = grid, .alpha = alpha, .eps_sing = eps_sing};

    std::size_t origin = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t is = 0; is < grid.space_count(); ++is) {
        const double r = grid.spatial_radius(is);
        if (r < best) {
            best = r;
            origin = is;
        }
    }
    report.u_origin_final = U(origin, grid.nt() - 1);

    const ParabolicBoundaryMask mask(grid);
    double bmax = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < grid.node_count(); ++f)
        if (is_parabolic_boundary(mask.at_flat(f))) bmax = std::max(bmax, U.at_flat(f));
    report.boundary_max = bmax;

    const OperatorApplication lu = apply_operator(op, U, DriftScheme::Central);
    double lmax = -std::numeric_limits<double>::infinity();
    std::size_t nonneg = 0;
    for (int it = 1; it < grid.nt(); ++it) {
        for (std::size_t is = 0; is < grid.space_count(); ++is) {
            if (!lu.defined_at(is, it) || grid.lateral(is)) continue;
            if (grid.spatial_radius(is) < 2.0 * grid.hx()) continue;
            const double v = lu.values(is, it);
            lmax = std::max(lmax, v);
            if (v >= 0.0) ++nonneg;
        }
    }
    report.lu_interior_max = lmax;
    report.lu_nonneg_count = nonneg;

    // Naive sup/sup route applied to the supersolution itself.
    const ExponentPair sup_pair{Exponent::infinity(), Exponent::infinity()};
    report.naive_sup = std::max(U.max_value(), 0.0);
    report.naive_rhs_core_included = estimate_rhs(op, U, sup_pair);
    report.naive_rhs_core_excluded = estimate_rhs(op, U, sup_pair, 2.0 * grid.hx());

    const ExponentPair e1{Exponent::integer(n), Exponent::infinity()};
    const WeightField h = drift_weight(op, e1, kDriftTotal);
    MixedNormSpec spec;
    spec.exps = e1;
    report.h_norm_grid = mixed_norm_raw(grid, h.values, spec);
    report.h_norm_exact =
        radial_drift_mixed_norm_exact(n, grid.radius(), alpha, strength, eps_sing);

    DivergenceStudy study;
    double eps = eps_sing;
    for (int k = 0; k < 4; ++k) {
        study.eps.push_back(eps);
        study.value.push_back(
            radial_drift_mixed_norm_exact(n, grid.radius(), alpha, strength, eps));
        eps *= 0.5;
    }
    for (std::size_t k = 0; k + 1 < study.value.size(); ++k) {
        study.increment.push_back(study.value[k + 1] - study.value[k]);
        study.growth_ratio.push_back(study.value[k + 1] / study.value[k]);
    }
    // Divergence signal: the increments per halving do not decay. A
    // convergent regularization has geometrically shrinking increments;
    // the critical exponent keeps them constant.
    const double vmax = *std::max_element(study.value.begin(), study.value.end());
    const double d_last = study.increment.back();
    const double d_prev = study.increment[study.increment.size() - 2];
    study.divergent = d_last > 1e-9 * vmax && d_last >= 0.9 * d_prev;
    report.study = std::move(study);
    return report;
}

}  // namespace parmax
