#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sobolab/studies.hpp"

using namespace sobolab;
using Catch::Matchers::WithinRel;

TEST_CASE("counterexample classification across the parameter grid") {
    struct Row {
        double alpha, beta;
        int d;
        bool integrable, grad_divergent;
    };
    // integrable iff alpha > d/2; gradient divergent iff (d-1-2a)/b >= -1
    std::vector<Row> rows = {
        {1.0, 2.0, 1, true, true},   {2.0, 3.0, 2, true, true}, {3.0, 4.0, 3, true, true},
        {0.4, 2.0, 1, false, true},  {2.0, 1.0, 1, true, false},
    };
    for (const auto& row : rows) {
        INFO("alpha=" << row.alpha << " beta=" << row.beta << " d=" << row.d);
        StudyReport rep = counterexample_study(row.alpha, row.beta, row.d, 1.0);
        REQUIRE(rep.all_pass());
        REQUIRE((rep.quantities.at("omega_integral").status == Status::converged) ==
                row.integrable);
        REQUIRE((rep.quantities.at("radial_gradient_integral").status == Status::divergent) ==
                row.grad_divergent);
    }
}

TEST_CASE("counterexample direct gradient cross-check in one dimension") {
    StudyReport rep = counterexample_study(1.0, 2.0, 1, 1.0);
    REQUIRE(rep.quantities.count("direct_gradient_integral") == 1);
    REQUIRE(rep.quantities.at("direct_gradient_integral").status == Status::divergent);
}

TEST_CASE("counterexample rejects bad parameters") {
    REQUIRE_THROWS_AS(counterexample_study(-1.0, 2.0, 1, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(counterexample_study(1.0, 2.0, 4, 1.0), std::invalid_argument);
}

TEST_CASE("oscillatory pair study") {
    AppendixOscOptions opt;
    opt.equivalence_samples = 2000;
    opt.lipschitz_pairs = 40000;
    StudyReport rep = appendix_osc_study(1.0, 0.75, opt);
    for (const auto& c : rep.claims) {
        INFO(c.name << ": " << c.detail);
        REQUIRE(c.pass);
    }
    // the ratio bound is hard: |sin| <= 1 forces the band
    REQUIRE(rep.quantities.at("equivalence_c").value >= std::exp(-1.0) - 1e-12);
    REQUIRE(rep.quantities.at("equivalence_C").value <= std::exp(1.0) + 1e-12);
    // ratio at the origin is e^{-sin(1)}
    Weight osc = make_catalog_weight("appendix_osc", {}, 1);
    Weight env = make_catalog_weight("exp_norm", {}, 1);
    REQUIRE_THAT(osc(Vec(0.0)) / env(Vec(0.0)), WithinRel(std::exp(-std::sin(1.0)), 1e-13));
}

TEST_CASE("antiderivative isometry on the line") {
    SECTION("hat against the flat weight: both sides integrate |g|") {
        TestFunction hat = make_hat(1, 1.0, 1.0);
        Weight one = make_catalog_weight("one", {}, 1);
        auto rep = homog1d_check(hat, one, 1.0, 1e-3);
        REQUIRE(rep.residual < 1e-4);
        REQUIRE_THAT(rep.norm_g, WithinRel(3.0, 1e-5));  // plateau 2 + two ramps of mass 1/2
    }
    SECTION("bump against a gaussian, p=2, with quadratic residual decay") {
        TestFunction bump = make_bump(Vec(0.0), 1.0, 1.0);
        Weight g = make_catalog_weight("gauss", {1.0}, 1);
        auto coarse = homog1d_check(bump, g, 2.0, 1e-3);
        auto fine = homog1d_check(bump, g, 2.0, 0.5e-3);
        REQUIRE(coarse.residual < 1e-6);
        REQUIRE(fine.residual <= coarse.residual / 3.5);
    }
    SECTION("zero function gives zero on both sides") {
        TestFunction z = make_bump(Vec(0.0), 1.0, 0.0);
        Weight one = make_catalog_weight("one", {}, 1);
        auto rep = homog1d_check(z, one, 1.0, 1e-3);
        REQUIRE(rep.norm_g == 0.0);
        REQUIRE(rep.norm_G_prime == 0.0);
        REQUIRE(rep.residual == 0.0);
    }
    SECTION("coarse grids are rejected") {
        TestFunction bump = make_bump(Vec(0.0), 1.0, 1.0);
        Weight one = make_catalog_weight("one", {}, 1);
        REQUIRE_THROWS_AS(homog1d_check(bump, one, 1.0, 0.4), std::runtime_error);
    }
}
