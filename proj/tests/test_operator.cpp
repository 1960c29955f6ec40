#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "parmax/coefficients.hpp"
#include "parmax/operator_ops.hpp"

using namespace parmax;

namespace {

OperatorCoefficients heat_plus_u(const Cylinder& g) {
    ConstantCoefficients v;
    v.c = 1.0;
    return make_constant(g, v);
}

}  // namespace

TEST_CASE("operator application is exact on space-quadratic, time-linear data") {
    for (int dim : {1, 2}) {
        const Cylinder g(dim, 1.0, 1.0, dim == 2 ? 13 : 21, 9);
        const auto op = heat_plus_u(g);  // sigma=1, a=I, b=0, c=1
        const auto u = GridFunction::sample(g, [](const std::array<double, 2>& x, double t) {
            return 1.0 - x[0] * x[0] - x[1] * x[1] - t;
        });
        const auto lu = apply_operator(op, u);
        for (int it = 1; it < g.nt(); ++it) {
            for (std::size_t is = 0; is < g.space_count(); ++is) {
                if (!lu.defined_at(is, it)) continue;
                const auto x = g.coords(is);
                const double r2 = x[0] * x[0] + x[1] * x[1];
                // D_t u = -1, -a Laplace u = 2n, c u = u.
                const double expected = -1.0 + 2.0 * dim + 1.0 - r2 - g.time(it);
                CHECK(lu.values(is, it) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
        // Boundary and initial-slice nodes are undefined, never zero-faked.
        CHECK_FALSE(lu.defined_at(0, 1));
        CHECK_FALSE(lu.defined_at(1, 0));
    }
}

TEST_CASE("zero function maps to zero") {
    const Cylinder g(1, 1.0, 1.0, 9, 5);
    std::mt19937_64 rng(4);
    const auto op = testing::random_certified_operator(g, rng);
    const auto lu = apply_operator(op, GridFunction(g));
    for (double v : lu.values.values()) CHECK(v == 0.0);
}

TEST_CASE("singular drift alpha=2 on the quadratic supersolution") {
    // Exact identity: discrete L U = (-t^2 - |x|^2 - 1/2) + ht at nodes
    // away from the regularization ball; the +ht is the backward-difference
    // defect on the concave-in-time part.
    for (int dim : {1, 2}) {
        const Cylinder g(dim, 1.0, 1.0, dim == 2 ? 21 : 41, 17);
        const auto op = make_singular_drift(g, 2.0);
        const auto u = GridFunction::sample(g, [](const std::array<double, 2>& x, double t) {
            return 2.0 * t - t * t - x[0] * x[0] - x[1] * x[1] - 0.5;
        });
        const auto lu = apply_operator(op, u);
        for (int it = 1; it < g.nt(); ++it) {
            for (std::size_t is = 0; is < g.space_count(); ++is) {
                if (!lu.defined_at(is, it)) continue;
                if (g.spatial_radius(is) < 2.0 * g.hx()) continue;
                const auto x = g.coords(is);
                const double r2 = x[0] * x[0] + x[1] * x[1];
                const double t = g.time(it);
                const double expected = -t * t - r2 - 0.5 + g.ht();
                CHECK(lu.values(is, it) == doctest::Approx(expected).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("linearity of apply_operator") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        const int dim = trial % 2 + 1;
        const Cylinder g(dim, 1.0, 1.0, dim == 2 ? 7 : 11, 6);
        const auto op = testing::random_certified_operator(g, rng);
        const auto u = testing::random_grid_function(g, rng);
        const auto v = testing::random_grid_function(g, rng);
        const double a = 1.7, b = -0.4;
        std::vector<double> combo(g.node_count());
        for (std::size_t i = 0; i < combo.size(); ++i)
            combo[i] = a * u.values()[i] + b * v.values()[i];
        const auto lc = apply_operator(op, GridFunction(g, std::move(combo)));
        const auto lu = apply_operator(op, u);
        const auto lv = apply_operator(op, v);
        for (std::size_t f = 0; f < g.node_count(); ++f) {
            if (!lc.defined[f]) continue;
            const double want = a * lu.values.at_flat(f) + b * lv.values.at_flat(f);
            CHECK(std::abs(lc.values.at_flat(f) - want) <=
                  1e-12 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("upwind drift matches the sign structure") {
    const Cylinder g(1, 1.0, 1.0, 9, 4);
    ConstantCoefficients v;
    v.b1 = 2.0;
    const auto op = make_constant(g, v);
    const auto u = GridFunction::sample(g, [](const std::array<double, 2>& x, double) {
        return x[0] * x[0];
    });
    const auto central = apply_operator(op, u, DriftScheme::Central);
    const auto upwind = apply_operator(op, u, DriftScheme::Upwind);
    // For b > 0 the upwind derivative is backward: 2x - hx; central is exact.
    const std::size_t is = 6;
    const double x = g.coord(is, 0);
    CHECK(central.values(is, 2) ==
          doctest::Approx(-2.0 + 2.0 * (2.0 * x)).epsilon(1e-12));
    CHECK(upwind.values(is, 2) ==
          doctest::Approx(-2.0 + 2.0 * (2.0 * x - g.hx())).epsilon(1e-12));
}

TEST_CASE("degeneracy branch selection and verdicts") {
    const Cylinder g(1, 1.0, 0.5, 7, 4);
    const auto zero = GridFunction(g);
    const auto one = GridFunction::sample(g, [](const std::array<double, 2>&, double) {
        return 1.0;
    });
    const auto pair = [](const char* p, const char* q) {
        return ExponentPair{Exponent::parse(p), Exponent::parse(q)};
    };
    const auto op_of = [&](double s, double a, double c) {
        ConstantCoefficients v;
        v.sigma = s;
        v.a11 = a;
        v.c = c;
        return make_constant(g, v);
    };

    struct Row {
        ExponentPair e;
        OperatorCoefficients pass_op;
        OperatorCoefficients fail_op;
        DegeneracyBranch branch;
    };
    const std::vector<Row> table = {
        {pair("1", "inf"), op_of(0, 1, 0), op_of(1, 0, 1), DegeneracyBranch::TracePositive},
        {pair("inf", "1"), op_of(1, 0, 0), op_of(0, 1, 1), DegeneracyBranch::SigmaPositive},
        {pair("inf", "inf"), op_of(0, 0, 1), op_of(1, 1, 0), DegeneracyBranch::CPositive},
        {pair("inf", "2"), op_of(1, 0, 0), op_of(0, 1, 0), DegeneracyBranch::CPlusSigma},
        {pair("3", "inf"), op_of(0, 1, 0), op_of(1, 0, 0), DegeneracyBranch::TracePlusC},
        {pair("2", "2"), op_of(1, 0, 0), op_of(0, 0, 1), DegeneracyBranch::TracePlusSigma},
        {pair("4", "4"), op_of(1, 1, 1), op_of(0, 0, 0), DegeneracyBranch::TraceSigmaC},
    };
    (void)zero;
    (void)one;
    for (const auto& row : table) {
        const auto good = check_degeneracy_condition(row.pass_op, row.e);
        CHECK(good.branch == row.branch);
        CHECK(good.pass);
        CHECK(good.violating_nodes.empty());
        const auto bad = check_degeneracy_condition(row.fail_op, row.e);
        CHECK(bad.branch == row.branch);
        CHECK_FALSE(bad.pass);
        CHECK(bad.violating_nodes.size() == g.node_count());
    }
    CHECK_THROWS(check_degeneracy_condition(op_of(1, 1, 1), pair("1", "1")));
}

TEST_CASE("drift weight values and conventions") {
    const Cylinder g(1, 1.0, 1.0, 9, 5);
    SUBCASE("unit nondegenerate coefficients return |b|") {
        ConstantCoefficients v;
        v.c = 1.0;
        v.b1 = 3.0;
        const auto op = make_constant(g, v);
        for (const char* pq : {"2", "inf"}) {
            const auto h = drift_weight(op, {Exponent::parse(pq), Exponent::infinity()});
            CHECK_FALSE(h.any_infinite());
            for (double val : h.values) CHECK(val == doctest::Approx(3.0));
        }
    }
    SUBCASE("zero drift beats degenerate weights (0/0 = 0)") {
        ConstantCoefficients v;
        v.sigma = 0.0;  // degenerate, but numerator is zero
        v.a11 = 0.0;
        v.c = 0.0;
        const auto op = make_constant(g, v);
        const auto h = drift_weight(op, {Exponent::integer(2), Exponent::integer(2)});
        CHECK_FALSE(h.any_infinite());
        for (double val : h.values) CHECK(val == 0.0);
    }
    SUBCASE("nonzero drift over a vanishing weight flags infinity") {
        ConstantCoefficients v;
        v.sigma = 0.0;
        v.b1 = 1.0;
        v.c = 1.0;
        const auto op = make_constant(g, v);
        const auto h = drift_weight(op, {Exponent::integer(2), Exponent::integer(2)});
        CHECK(h.any_infinite());
        CHECK(h.infinite_count() == g.node_count());
        CHECK_THROWS(h.as_grid_function());
    }
    SUBCASE("radial drift with alpha = 1 is constant n+1 away from the core") {
        const auto op = make_singular_drift(g, 1.0);
        const auto h = drift_weight(op, {Exponent::integer(1), Exponent::infinity()});
        const double eps = default_eps_sing(g);
        for (int it = 0; it < g.nt(); ++it)
            for (std::size_t is = 0; is < g.space_count(); ++is)
                if (g.spatial_radius(is) >= eps)
                    CHECK(h.at(is, it) == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("exponential rescaling") {
    const Cylinder g(1, 1.0, 1.0, 9, 6);
    SUBCASE("kappa = 0 is the identity") {
        const auto op = make_heat(g);
        std::mt19937_64 rng(6);
        const auto u = testing::random_grid_function(g, rng);
        const auto r = exp_rescale(op, u);
        CHECK(r.factor == doctest::Approx(1.0));
        for (std::size_t f = 0; f < g.node_count(); ++f)
            CHECK(r.v.at_flat(f) == u.at_flat(f));
    }
    SUBCASE("kappa = 1 cancels an exponential profile") {
        ConstantCoefficients v;
        v.kappa = 1.0;
        const auto op = make_constant(g, v);
        const auto u = GridFunction::sample(g, [](const std::array<double, 2>&, double t) {
            return std::exp(t);
        });
        const auto r = exp_rescale(op, u);
        for (std::size_t f = 0; f < g.node_count(); ++f)
            CHECK(r.v.at_flat(f) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("kappa = 2 lifts c = -1 to c = 1") {
        ConstantCoefficients v;
        v.c = -1.0;
        v.kappa = 2.0;
        const auto op = make_constant(g, v);
        const auto r = exp_rescale(op, GridFunction(g));
        for (int it = 0; it < g.nt(); ++it)
            for (std::size_t is = 0; is < g.space_count(); ++is)
                CHECK(r.op.c()(is, it) == doctest::Approx(1.0));
        CHECK(r.op.kappa() == 0.0);
    }
    SUBCASE("round trip restores the function") {
        ConstantCoefficients v;
        v.kappa = 1.5;
        const auto op = make_constant(g, v);
        std::mt19937_64 rng(8);
        const auto u = testing::random_grid_function(g, rng);
        const auto r = exp_rescale(op, u);
        for (int it = 0; it < g.nt(); ++it) {
            const double back = std::exp(1.5 * g.time(it));
            for (std::size_t is = 0; is < g.space_count(); ++is)
                CHECK(testing::rel_diff(r.v(is, it) * back, u(is, it)) <= 1e-12);
        }
    }
    SUBCASE("rescaled operator application matches the damped image") {
        ConstantCoefficients cv;
        cv.c = 0.5;
        cv.b1 = 0.5;
        cv.kappa = 1.0;
        const Cylinder fine(1, 1.0, 1.0, 41, 161);
        const auto op = make_constant(fine, cv);
        const auto u = GridFunction::sample(fine, [](const std::array<double, 2>& x, double t) {
            return std::cos(x[0]) * (1.0 + 0.5 * std::sin(t));
        });
        const auto r = exp_rescale(op, u);
        const auto lv = apply_operator(r.op, r.v);
        const auto lu = apply_operator(op, u);
        double worst = 0.0;
        for (int it = 1; it < fine.nt(); ++it)
            for (std::size_t is = 0; is < fine.space_count(); ++is)
                if (lv.defined_at(is, it)) {
                    const double want = std::exp(-1.0 * fine.time(it)) * lu.values(is, it);
                    worst = std::max(worst, std::abs(lv.values(is, it) - want));
                }
        CHECK(worst <= 10.0 * fine.ht());  // backward-difference truncation
    }
}

TEST_CASE("coefficient invariants reject bad data") {
    const Cylinder g(1, 1.0, 1.0, 5, 3);
    const auto constfield = [&](double v) {
        return GridFunction::sample(g, [=](const std::array<double, 2>&, double) { return v; });
    };
    // sigma < 0
    CHECK_THROWS(OperatorCoefficients(constfield(-1.0), {constfield(1.0)}, {}, constfield(0.0)));
    // c + kappa sigma < 0
    CHECK_THROWS(OperatorCoefficients(constfield(1.0), {constfield(1.0)}, {}, constfield(-0.5)));
    // a11 < 0 (not psd)
    CHECK_THROWS(OperatorCoefficients(constfield(1.0), {constfield(-1.0)}, {}, constfield(0.0)));
    // 2D: |a12| > sqrt(a11 a22)
    const Cylinder g2(2, 1.0, 1.0, 5, 3);
    const auto cf2 = [&](double v) {
        return GridFunction::sample(g2, [=](const std::array<double, 2>&, double) { return v; });
    };
    CHECK_THROWS(OperatorCoefficients(cf2(1.0), {cf2(1.0), cf2(1.0), cf2(1.5)}, {}, cf2(0.0)));
    // unknown family name
    CHECK_THROWS(build_coefficient_family(g, "nope", {}));
}

TEST_CASE("nondegeneracy certification") {
    const Cylinder g(1, 1.0, 1.0, 7, 4);
    std::mt19937_64 rng(21);
    const auto op = testing::random_certified_operator(g, rng);
    CHECK(certify_nondegenerate(op, 0.1).certified);
    CHECK_FALSE(certify_nondegenerate(op, 50.0).certified);
    const auto degenerate = make_constant(g, [] {
        ConstantCoefficients v;
        v.sigma = 0.0;
        v.c = 1.0;
        return v;
    }());
    CHECK_FALSE(certify_nondegenerate(degenerate, 0.1).certified);
}
