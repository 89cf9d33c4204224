#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sobolab/sampling.hpp"
#include "sobolab/weights.hpp"

using namespace sobolab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Central finite difference of a scalar function, test-side oracle.
Vec fd_grad(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
    Vec g(x.dim);
    for (int i = 0; i < x.dim; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

}  // namespace

TEST_CASE("catalog values") {
    REQUIRE(make_catalog_weight("one", {}, 2)(Vec(3.0, 4.0)) == 1.0);
    // (1+0)^-1 * (1 + sin 0 + 1) = 2
    REQUIRE_THAT(make_catalog_weight("oscillatory", {1.0, 2.0}, 1)(Vec(0.0)),
                 WithinRel(2.0, 1e-15));
    REQUIRE_THAT(make_catalog_weight("appendix_osc", {}, 1)(Vec(0.0)),
                 WithinRel(std::exp(-1.0 - std::sin(1.0)), 1e-14));
    REQUIRE_THAT(make_catalog_weight("gauss", {2.0}, 2)(Vec(1.0, 1.0)),
                 WithinRel(std::exp(-4.0), 1e-14));
    REQUIRE_THAT(make_catalog_weight("exp_lin", {3.0}, 1)(Vec(2.0)),
                 WithinRel(std::exp(-6.0), 1e-14));
    REQUIRE_THAT(make_catalog_weight("exp_norm", {}, 1)(Vec(1.0)),
                 WithinRel(std::exp(-std::sqrt(2.0)), 1e-14));
    REQUIRE_THAT(make_catalog_weight("poly", {2.0}, 1)(Vec(3.0)),
                 WithinRel(std::pow(10.0, -2.0), 1e-14));
}

TEST_CASE("catalog rejects invalid requests") {
    REQUIRE_THROWS_AS(make_catalog_weight("no_such_weight", {}, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(make_catalog_weight("poly", {-1.0}, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(make_catalog_weight("poly", {0.0}, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(make_catalog_weight("staircase", {}, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(make_catalog_weight("gauss", {}, 1), std::invalid_argument);
}

TEST_CASE("staircase steps follow the shifted piecewise formula") {
    Weight st = make_catalog_weight("staircase", {}, 1);
    // n+1 on (2n, 2n+1], (n+1)^2 on (2n+1, 2n+2]
    REQUIRE(st(Vec(0.5)) == 1.0);
    REQUIRE(st(Vec(1.5)) == 1.0);
    REQUIRE(st(Vec(2.7)) == 2.0);
    REQUIRE(st(Vec(3.5)) == 4.0);
    REQUIRE(st(Vec(4.1)) == 3.0);
    REQUIRE(st(Vec(-2.7)) == 2.0);  // even extension
    REQUIRE_FALSE(st.field.has_gradient());
}

TEST_CASE("staircase bounds from the piecewise oracle") {
    Weight st = make_catalog_weight("staircase", {}, 1);
    // inside a single tread the weight is constant
    auto inner = check_compact_boundedness(st, Box(Vec(2.5), Vec(3.0)), 512);
    REQUIRE(inner.m == 2.0);
    REQUIRE(inner.M == 2.0);
    REQUIRE(inner.satisfied);
    // across the tread boundary at x=3 the oracle gives {2, 4}
    auto across = check_compact_boundedness(st, Box(Vec(2.5), Vec(3.5)), 512);
    REQUIRE(across.m == 2.0);
    REQUIRE(across.M == 4.0);
}

TEST_CASE("analytic gradients agree with finite differences") {
    struct Case {
        const char* name;
        std::vector<double> params;
        int dim;
        double halfwidth;
    };
    // appendix_osc is restricted to the region where its phase is resolvable
    std::vector<Case> cases = {{"gauss", {1.0}, 1, 3.0},     {"gauss", {0.5}, 2, 3.0},
                               {"exp_norm", {}, 1, 3.0},     {"exp_norm", {}, 3, 2.0},
                               {"poly", {1.5}, 2, 3.0},      {"oscillatory", {1.0, 2.0}, 1, 3.0},
                               {"oscillatory", {2.0, 3.0}, 2, 2.0}, {"appendix_osc", {}, 1, 1.5}};
    for (const auto& c : cases) {
        Weight w = make_catalog_weight(c.name, c.params, c.dim);
        auto pts = halton_points(centered_cube(c.dim, c.halfwidth), 100, fnv1a64(c.name));
        for (const auto& x : pts) {
            Vec g = w.field.gradient(x);
            Vec fd = fd_grad(w.field.value, x, 1e-6);
            for (int i = 0; i < c.dim; ++i) {
                double denom = std::max(1.0, std::abs(g[i]));
                REQUIRE(std::abs(g[i] - fd[i]) / denom < 1e-4);
            }
        }
    }
}

TEST_CASE("exp_lin gradient away from the kink") {
    Weight w = make_catalog_weight("exp_lin", {2.0}, 1);
    REQUIRE_THAT(w.field.gradient(Vec(1.5))[0], WithinRel(-2.0 * std::exp(-3.0), 1e-12));
    REQUIRE(w.field.gradient(Vec(0.0))[0] == 0.0);  // a.e. convention at the kink
}

TEST_CASE("weight positivity is enforced at construction") {
    ScalarField f = constant_field(1, 1.0, "dips_negative");
    f.value = [](const Vec& x) { return x[0]; };
    REQUIRE_THROWS_AS(make_weight(std::move(f)), std::invalid_argument);
}

TEST_CASE("omega_theta combines exponents pointwise") {
    SECTION("constant against exponential") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("exp_lin", {2.0}, 1));
        Weight wt = omega_theta(pair, 0.5);
        for (double x : {-2.0, -0.5, 0.3, 1.7})
            REQUIRE_THAT(wt(Vec(x)), WithinRel(std::exp(-std::abs(x)), 1e-14));
    }
    SECTION("gaussians add rates") {
        WeightPair pair = make_weight_pair(make_catalog_weight("gauss", {1.0}, 1),
                                           make_catalog_weight("gauss", {3.0}, 1));
        Weight wt = omega_theta(pair, 0.25);
        Weight expected = make_catalog_weight("gauss", {1.5}, 1);
        for (const auto& x : halton_points(centered_cube(1, 3.0), 50, 7))
            REQUIRE_THAT(wt(x), WithinRel(expected(x), 1e-14));
    }
    SECTION("poly exponents interpolate, checked at 100 points") {
        WeightPair pair = make_weight_pair(make_catalog_weight("poly", {1.0}, 1),
                                           make_catalog_weight("poly", {3.0}, 1));
        Weight wt = omega_theta(pair, 0.5);
        Weight expected = make_catalog_weight("poly", {2.0}, 1);
        for (const auto& x : halton_points(centered_cube(1, 4.0), 100, 11))
            REQUIRE_THAT(wt(x), WithinRel(expected(x), 1e-14));
    }
    SECTION("endpoints rejected") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("gauss", {1.0}, 1));
        REQUIRE_THROWS_AS(omega_theta(pair, 0.0), std::invalid_argument);
        REQUIRE_THROWS_AS(omega_theta(pair, 1.0), std::invalid_argument);
    }
}

TEST_CASE("interpolation identity r^(j-theta) w_j = w_theta") {
    WeightPair pair = make_weight_pair(make_catalog_weight("poly", {1.0}, 1),
                                       make_catalog_weight("poly", {3.0}, 1));
    for (double theta : {0.25, 0.5, 0.75}) {
        Weight wt = omega_theta(pair, theta);
        for (const auto& x : halton_points(centered_cube(1, 4.0), 100, 13)) {
            double r = pair.ratio(x);
            for (int j = 0; j <= 1; ++j) {
                double lhs = std::pow(r, j - theta) * (j == 0 ? pair.w0(x) : pair.w1(x));
                REQUIRE_THAT(lhs, WithinRel(wt(x), 1e-12));
            }
        }
    }
}

TEST_CASE("log ratio gradient") {
    SECTION("constant over gaussian gives 2x") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("gauss", {1.0}, 1));
        VectorField g = log_ratio_grad(pair);
        for (double x : {-1.3, 0.4, 2.0}) REQUIRE_THAT(g(Vec(x))[0], WithinRel(2.0 * x, 1e-13));
    }
    SECTION("constant over exp_norm gives x/sqrt(1+x^2), bounded by 1") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("exp_norm", {}, 1));
        VectorField g = log_ratio_grad(pair);
        for (double x : {-3.0, -0.7, 0.1, 2.5}) {
            REQUIRE_THAT(g(Vec(x))[0], WithinRel(x / std::sqrt(1.0 + x * x), 1e-12));
            REQUIRE(std::abs(g(Vec(x))[0]) <= 1.0);
        }
    }
    SECTION("oscillatory pair agrees with a finite-difference oracle at x=2") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("appendix_osc", {}, 1));
        WeightPair copy = pair;
        auto logr = [copy](const Vec& x) { return copy.log_ratio(x); };
        double fd = fd_grad(logr, Vec(2.0), 1e-6)[0];
        double an = log_ratio_grad(pair)(Vec(2.0))[0];
        REQUIRE(std::abs(an - fd) / std::abs(an) < 1e-5);
    }
    SECTION("finite-difference agreement across smooth catalog pairs") {
        auto mk = [](const char* n, std::vector<double> p) {
            return make_catalog_weight(n, p, 1);
        };
        std::vector<WeightPair> pairs;
        pairs.push_back(make_weight_pair(mk("one", {}), mk("gauss", {1.0})));
        pairs.push_back(make_weight_pair(mk("gauss", {1.0}), mk("gauss", {3.0})));
        pairs.push_back(make_weight_pair(mk("poly", {1.0}), mk("poly", {3.0})));
        pairs.push_back(make_weight_pair(mk("one", {}), mk("exp_norm", {})));
        for (const auto& pair : pairs) {
            WeightPair copy = pair;
            auto logr = [copy](const Vec& x) { return copy.log_ratio(x); };
            for (const auto& x : halton_points(centered_cube(1, 3.0), 100, 17)) {
                double fd = fd_grad(logr, x, 1e-6)[0];
                double an = pair.log_ratio_gradient(x)[0];
                REQUIRE(std::abs(an - fd) / std::max(1.0, std::abs(an)) < 1e-4);
            }
        }
    }
}

TEST_CASE("compact boundedness probes") {
    Weight one = make_catalog_weight("one", {}, 1);
    auto b = check_compact_boundedness(one, Box(Vec(-7.0), Vec(11.0)), 64);
    REQUIRE(b.m == 1.0);
    REQUIRE(b.M == 1.0);
    REQUIRE(b.satisfied);

    // gaussian extremes sit at the corner and the center, both probed
    Weight g1 = make_catalog_weight("gauss", {1.0}, 1);
    auto bg = check_compact_boundedness(g1, Box(Vec(-2.0), Vec(2.0)), 512);
    REQUIRE_THAT(bg.m, WithinRel(std::exp(-4.0), 1e-12));
    REQUIRE_THAT(bg.M, WithinRel(1.0, 1e-12));
}

TEST_CASE("powers, products and quotients keep compact boundedness") {
    Weight g = make_catalog_weight("gauss", {1.0}, 1);
    Weight p = make_catalog_weight("poly", {2.0}, 1);
    ScalarField mixed;
    mixed.dim = 1;
    mixed.label = "g*p^2/g";
    Weight gc = g, pc = p;
    mixed.value = [gc, pc](const Vec& x) { return gc(x) * pc(x) * pc(x) / gc(x); };
    Weight w = make_weight(std::move(mixed));
    for (double hw : {1.0, 4.0, 8.0}) {
        auto b = check_compact_boundedness(w, centered_cube(1, hw), 256);
        REQUIRE(b.satisfied);
        REQUIRE(b.m > 0);
        REQUIRE(std::isfinite(b.M));
    }
}

TEST_CASE("lipschitz estimates") {
    SECTION("absolute value on [-1,1]") {
        ScalarField f;
        f.dim = 1;
        f.label = "abs";
        f.value = [](const Vec& x) { return std::abs(x[0]); };
        double est = estimate_lipschitz(f, Box(Vec(-1.0), Vec(1.0)), 10000);
        REQUIRE(est > 0.99);
        REQUIRE(est <= 1.0 + 1e-12);
    }
    SECTION("log ratio of exponential pair is 2") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("exp_lin", {2.0}, 1));
        WeightPair copy = pair;
        ScalarField f;
        f.dim = 1;
        f.label = "logr_exp_lin2";
        f.value = [copy](const Vec& x) { return copy.log_ratio(x); };
        double est = estimate_lipschitz(f, Box(Vec(-2.0), Vec(2.0)), 10000);
        REQUIRE(est > 1.99);
        REQUIRE(est <= 2.0 + 1e-9);
    }
    SECTION("oscillatory pair exceeds 100 on [-3,3]") {
        WeightPair pair = make_weight_pair(make_catalog_weight("one", {}, 1),
                                           make_catalog_weight("appendix_osc", {}, 1));
        WeightPair copy = pair;
        ScalarField f;
        f.dim = 1;
        f.label = "logr_appendix";
        f.value = [copy](const Vec& x) { return copy.log_ratio(x); };
        REQUIRE(estimate_lipschitz(f, Box(Vec(-3.0), Vec(3.0)), 100000) > 100.0);
    }
}

TEST_CASE("equivalence ratio bounds") {
    Weight osc = make_catalog_weight("appendix_osc", {}, 1);
    Weight env = make_catalog_weight("exp_norm", {}, 1);
    SECTION("identical weights") {
        auto r = check_equivalence(env, env, centered_cube(1, 5.0), 256);
        REQUIRE(r.c == 1.0);
        REQUIRE(r.C == 1.0);
    }
    SECTION("oscillatory weight against its envelope stays in the e-band") {
        auto r = check_equivalence(osc, env, centered_cube(1, 5.0), 4096);
        REQUIRE(r.c >= std::exp(-1.0) - 1e-12);
        REQUIRE(r.C <= std::exp(1.0) + 1e-12);
    }
    SECTION("gaussian rates, extremes at corner and center") {
        Weight g1 = make_catalog_weight("gauss", {1.0}, 1);
        Weight g2 = make_catalog_weight("gauss", {2.0}, 1);
        auto r = check_equivalence(g2, g1, centered_cube(1, 3.0), 512);
        REQUIRE_THAT(r.c, WithinRel(std::exp(-9.0), 1e-12));
        REQUIRE_THAT(r.C, WithinRel(1.0, 1e-12));
        auto flipped = check_equivalence(g1, g2, centered_cube(1, 3.0), 512);
        REQUIRE_THAT(flipped.C, WithinRel(std::exp(9.0), 1e-12));
        REQUIRE_THAT(flipped.c, WithinRel(1.0, 1e-12));
    }
}
