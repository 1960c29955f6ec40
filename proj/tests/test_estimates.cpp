#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "parmax/estimates.hpp"

using namespace parmax;

namespace {

ExponentPair pq(const char* p, const char* q) {
    return {Exponent::parse(p), Exponent::parse(q)};
}

// Nonnegative inside the ball, nonpositive on the lateral boundary (which
// includes box nodes outside the ball in 2D), zero at t = 0.
GridFunction bump_in_time(const Cylinder& g) {
    return GridFunction::sample(g, [&](const std::array<double, 2>& x, double t) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double R2 = g.radius() * g.radius();
        return (1.0 - r2 / R2) * std::sin(M_PI * t / g.final_time());
    });
}

}  // namespace

TEST_CASE("estimate_rhs: empty positivity set gives zero") {
    const Cylinder g(1, 1.0, 1.0, 21, 11);
    ConstantCoefficients v;
    v.c = 1.0;
    const auto op = make_constant(g, v);
    const auto u = GridFunction::sample(g, [](const std::array<double, 2>&, double) {
        return -1.0;
    });
    CHECK(estimate_rhs(op, u, pq("inf", "inf")) == 0.0);
}

TEST_CASE("estimate_rhs at (inf, inf) with c = 1 equals the positive-part sup") {
    const Cylinder g(1, 1.0, 1.0, 31, 17);
    ConstantCoefficients v;
    v.c = 1.0;
    const auto op = make_constant(g, v);
    const auto u = bump_in_time(g);
    const auto lu = apply_operator(op, u);
    double sup = 0.0;
    for (std::size_t f = 0; f < g.node_count(); ++f)
        if (lu.defined[f] && u.at_flat(f) > 0.0)
            sup = std::max(sup, std::max(lu.values.at_flat(f), 0.0));
    CHECK(estimate_rhs(op, u, pq("inf", "inf")) == doctest::Approx(sup).epsilon(1e-13));
}

TEST_CASE("estimate_rhs at (n+1, n+1) with unit coefficients is the plain L_{n+1} norm") {
    for (int dim : {1, 2}) {
        const Cylinder g(dim, 1.0, 1.0, dim == 2 ? 11 : 21, 9);
        const auto op = make_heat(g);  // weight is identically 1 at (n+1, n+1)
        const auto u = bump_in_time(g);
        const auto lu = apply_operator(op, u);

        std::vector<double> integrand(g.node_count(), 0.0);
        std::vector<std::uint8_t> member(g.node_count(), 0);
        for (std::size_t f = 0; f < g.node_count(); ++f) {
            if (lu.defined[f] && u.at_flat(f) > 0.0) {
                member[f] = 1;
                integrand[f] = std::max(lu.values.at_flat(f), 0.0);
            }
        }
        MixedNormSpec spec;
        spec.exps = pq(dim == 1 ? "2" : "3", dim == 1 ? "2" : "3");
        spec.restriction = PositivitySet(g, std::move(member));
        const double oracle =
            mixed_norm_oracle(GridFunction(g, std::move(integrand)), spec);
        CHECK(estimate_rhs(op, u, spec.exps) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("estimate_rhs is monotone in the integrand") {
    // Doubling u doubles (Lu)+ pointwise and keeps the positivity set, so
    // the weighted norm cannot decrease.
    const Cylinder g(1, 1.0, 1.0, 31, 17);
    ConstantCoefficients v;
    v.c = 1.0;
    v.b1 = 0.4;
    const auto op = make_constant(g, v);
    const auto u = bump_in_time(g);
    std::vector<double> doubled(u.values().begin(), u.values().end());
    for (auto& x : doubled) x *= 2.0;
    const auto e = pq("2", "4");
    const double base = estimate_rhs(op, u, e);
    const double more = estimate_rhs(op, GridFunction(g, std::move(doubled)), e);
    CHECK(base > 0.0);
    CHECK(more >= base - 1e-12);
    CHECK(more == doctest::Approx(2.0 * base).epsilon(1e-10));
}

TEST_CASE("certified nondegenerate operators pass every branch of the condition") {
    std::mt19937_64 rng(64);
    for (int dim : {1, 2}) {
        const Cylinder g(dim, 1.0, 1.0, dim == 2 ? 7 : 11, 5);
        auto op = testing::random_certified_operator(g, rng);
        // Certification needs c > 0 for the pure zeroth-order branches.
        std::vector<double> c_values(g.node_count(), 0.5);
        op = op.with_c(GridFunction(g, std::move(c_values)), 0.0);
        REQUIRE(certify_nondegenerate(op, 0.1).certified);
        const std::string n = std::to_string(dim);
        for (const auto& e :
             {pq(n.c_str(), "inf"), pq("inf", "1"), pq("inf", "inf"), pq("inf", "2"),
              pq(std::to_string(dim + 2).c_str(), "inf"),
              pq(std::to_string(dim + 1).c_str(), std::to_string(dim + 1).c_str()),
              pq("9", "9")}) {
            CHECK(check_degeneracy_condition(op, e).pass);
        }
    }
}

TEST_CASE("estimate_rhs rejects positive parabolic boundary data") {
    const Cylinder g(1, 1.0, 1.0, 9, 5);
    const auto op = make_heat(g);
    const auto bad = GridFunction::sample(g, [](const std::array<double, 2>&, double) {
        return 1.0;  // positive on the boundary too
    });
    CHECK_THROWS(estimate_rhs(op, bad, pq("2", "2")));
    CHECK_THROWS(estimate_rhs(op, GridFunction(g), pq("1", "1")));  // inadmissible pair
}

TEST_CASE("verify_bound: nonpositive forcing gives a zero report") {
    const Cylinder g(1, 1.0, 1.0, 41, 41);
    const auto op = make_heat(g);
    const auto f = GridFunction::sample(g, [](const std::array<double, 2>& x, double) {
        return -(1.0 + x[0] * x[0]);
    });
    const auto report = verify_bound(op, f, pq("2", "2"), {pq("1", "inf")});
    CHECK(report.lhs_sup == 0.0);
    CHECK(report.ratio == 0.0);
    CHECK(report.hypotheses_valid);
    CHECK(report.drift_norms.size() == 1);
    CHECK(report.drift_norms[0].norm == 0.0);  // zero drift
}

TEST_CASE("verify_bound: sup-estimate instance u <= sup f / c") {
    const Cylinder g(1, 1.0, 1.0, 81, 81);
    ConstantCoefficients v;
    v.c = 1.0;
    const auto op = make_constant(g, v);
    const auto f = GridFunction::sample(g, [](const std::array<double, 2>&, double) {
        return 1.0;
    });
    const auto report = verify_bound(op, f, pq("inf", "inf"), {});
    CHECK(report.hypotheses_valid);
    CHECK(report.ratio > 0.0);
    CHECK(report.ratio <= 1.0 + 1e-6);
}

TEST_CASE("verify_bound ratio is stable under refinement for the subcritical drift") {
    std::vector<double> ratios;
    for (int n : {41, 81, 161}) {
        const Cylinder g(1, 1.0, 1.0, n, n);
        const auto op = make_singular_drift(g, 1.5, -1.0, 0.05);
        const auto f = GridFunction::sample(g, [](const std::array<double, 2>&, double) {
            return 1.0;
        });
        const auto report = verify_bound(op, f, pq("2", "2"), {pq("1", "inf")});
        CHECK(report.hypotheses_valid);
        CHECK(std::isfinite(report.ratio));
        ratios.push_back(report.ratio);
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 2.0);
}

TEST_CASE("sign symmetry: negated data mirrors the report") {
    const Cylinder g(1, 1.0, 1.0, 41, 31);
    std::mt19937_64 rng(3);
    const auto op = testing::random_certified_operator(g, rng);
    const auto f = testing::random_smooth_field(g, rng);
    std::vector<double> neg(f.values().begin(), f.values().end());
    for (auto& x : neg) x = -x;
    const auto up = solve_forward(op, f).u;
    const auto un = solve_forward(op, GridFunction(g, std::move(neg))).u;
    for (std::size_t i = 0; i < g.node_count(); ++i)
        CHECK(std::abs(up.at_flat(i) + un.at_flat(i)) <= 1e-10);
    // sup of the negated run equals the negative part of the original.
    const double sup_neg = std::max(un.max_value(), 0.0);
    CHECK(sup_neg == doctest::Approx(std::max(-up.min_value(), 0.0)).epsilon(1e-9));
}

TEST_CASE("scaling all coefficients by one positive field preserves the estimate") {
    const Cylinder g(1, 1.0, 1.0, 31, 21);
    ConstantCoefficients v;
    v.sigma = 1.0;
    v.a11 = 1.0;
    v.b1 = 0.8;
    v.c = 0.5;
    const auto op = make_constant(g, v);

    const auto phi = GridFunction::sample(g, [](const std::array<double, 2>& x, double t) {
        return 1.5 + 0.5 * std::sin(3.0 * x[0] + t);
    });
    const auto scaled_field = [&](const GridFunction& base) {
        std::vector<double> out(g.node_count());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = base.values()[i] * phi.values()[i];
        return GridFunction(g, std::move(out));
    };
    std::vector<DriftPart> parts;
    DriftPart part;
    part.comp.push_back(scaled_field(op.b_parts()[0].comp[0]));
    parts.push_back(std::move(part));
    const OperatorCoefficients scaled(scaled_field(op.sigma()),
                                      {scaled_field(GridFunction::sample(
                                          g, [](const std::array<double, 2>&, double) {
                                              return 1.0;
                                          }))},
                                      std::move(parts), scaled_field(op.c()));

    const auto u = bump_in_time(g);
    const auto e0 = pq("2", "2");
    const double rhs_base = estimate_rhs(op, u, e0);
    const double rhs_scaled = estimate_rhs(scaled, u, e0);
    CHECK(testing::rel_diff(rhs_base, rhs_scaled) <= 1e-8);
    CHECK(check_degeneracy_condition(op, e0).pass ==
          check_degeneracy_condition(scaled, e0).pass);
}

TEST_CASE("rescaled problems: negative c handled through exp(kappa t)") {
    const Cylinder g(1, 1.0, 1.0, 41, 41);
    ConstantCoefficients v;
    v.c = -1.0;
    v.kappa = 2.0;
    const auto op = make_constant(g, v);
    const auto f = bump_in_time(g);
    const auto report = verify_bound(op, f, pq("2", "2"), {});
    CHECK(report.rescale_factor == doctest::Approx(std::exp(2.0)));
    CHECK(report.degeneracy.pass);  // checked on c + kappa sigma = 1
    // sup u <= exp(kappa T) sup v up to the scheme truncation slack; the
    // report carries the verdict of that chain.
    CHECK(report.rescale_chain_ok);
    const double slack = 1.0 + 10.0 * (g.hx() + g.ht());
    CHECK(report.lhs_sup_original <= report.rescale_factor * report.lhs_sup * slack + 1e-12);
}

TEST_CASE("bony check on manufactured data") {
    const Cylinder g(1, 1.0, 1.0, 41, 41);
    const auto op = make_heat(g);
    SUBCASE("interior maximum passes") {
        const auto u = GridFunction::sample(g, [](const std::array<double, 2>& x, double t) {
            return 1.0 - x[0] * x[0] - (t - 0.5) * (t - 0.5);
        });
        const auto res = bony_check(op, u);
        CHECK(res.applicable);
        CHECK(res.pass);
        // At the maximum the diffusion term contributes +2n.
        CHECK(res.normalized_sup >= 2.0 / (1.0 + 1.0) - default_tol_bony(g));
    }
    SUBCASE("negative function is not applicable") {
        const auto u = GridFunction::sample(g, [](const std::array<double, 2>&, double) {
            return -1.0;
        });
        CHECK_FALSE(bony_check(op, u).applicable);
    }
    SUBCASE("boundary-only maximum is not applicable") {
        const auto u = GridFunction::sample(g, [](const std::array<double, 2>& x, double) {
            return x[0];
        });
        CHECK_FALSE(bony_check(op, u).applicable);
    }
}

TEST_CASE("counterexample study at the critical and subcritical exponents") {
    const Cylinder g(1, 1.0, 1.0, 81, 81);
    SUBCASE("alpha = 2: supersolution facts and divergence flag") {
        const auto report = counterexample_remark41(2.0, g);
        CHECK(report.u_origin_final == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(report.boundary_max <= 0.0);
        CHECK(report.lu_interior_max <= -0.4);
        CHECK(report.lu_nonneg_count == 0);
        CHECK(report.study.divergent);
        // Logarithmic growth: increments per halving are constant,
        // 4 ln 2 each for the exact radial integral in 1D.
        for (double inc : report.study.increment)
            CHECK(inc == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-10));
        // The sup/sup bound cannot be certified: away from the regularized
        // core the positive part of L U vanishes while sup U = 1/2, so no
        // finite constant closes the inequality.
        CHECK(report.naive_sup == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(report.naive_rhs_core_excluded == 0.0);
        CHECK(report.naive_rhs_core_included > 1.0);  // positive part on the core only
    }
    SUBCASE("alpha = 1.5: stable and matched to the exact radial integral") {
        const auto report = counterexample_remark41(1.5, g, 0.05);
        CHECK_FALSE(report.study.divergent);
        CHECK(testing::rel_diff(report.h_norm_grid, report.h_norm_exact) < 0.01);
        // Exact value: 8 - 6 sqrt(eps) for strength 2 over [-1, 1].
        CHECK(report.h_norm_exact ==
              doctest::Approx(8.0 - 6.0 * std::sqrt(0.05)).epsilon(1e-12));
    }
    SUBCASE("alpha = 1: h is essentially constant n+1, norm matches closed form") {
        const auto report = counterexample_remark41(1.0, g);
        CHECK_FALSE(report.study.divergent);
        CHECK(testing::rel_diff(report.h_norm_grid, report.h_norm_exact) < 0.01);
    }
    CHECK_THROWS(counterexample_remark41(2.5, g));
    CHECK_THROWS(counterexample_remark41(0.0, g));
}

TEST_CASE("radial norm closed form spot checks") {
    // alpha = 2, n = 1, strength 2: V(eps) = 2 + 4 ln(1/eps).
    CHECK(radial_drift_mixed_norm_exact(1, 1.0, 2.0, 2.0, 0.1) ==
          doctest::Approx(2.0 + 4.0 * std::log(10.0)).epsilon(1e-12));
    // alpha = 2, n = 2, strength 3: V(eps)^2 = 18 pi (1/4 + ln(1/eps)).
    const double v2 = radial_drift_mixed_norm_exact(2, 1.0, 2.0, 3.0, 0.1);
    CHECK(v2 * v2 == doctest::Approx(18.0 * M_PI * (0.25 + std::log(10.0))).epsilon(1e-12));
    // eps covering the whole ball: pure core integral.
    CHECK(radial_drift_mixed_norm_exact(1, 1.0, 2.0, 2.0, 2.0) ==
          doctest::Approx(2.0 * 2.0 * (1.0 / 2.0) / 4.0).epsilon(1e-12));
}
