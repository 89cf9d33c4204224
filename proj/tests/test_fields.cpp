#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sobolab/quadrature.hpp"
#include "sobolab/sampling.hpp"
#include "sobolab/norms.hpp"
#include "sobolab/testfunc.hpp"

using namespace sobolab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("bump basics") {
    TestFunction b = make_bump(Vec(0.0), 1.0, 1.0);
    REQUIRE(b(Vec(0.0)) == 1.0);
    REQUIRE(b(Vec(1.0)) == 0.0);
    REQUIRE(b.gradient(Vec(1.0))[0] == 0.0);
    REQUIRE(b(Vec(1.5)) == 0.0);
    REQUIRE(b.gradient(Vec(1.5))[0] == 0.0);
    REQUIRE_THROWS_AS(make_bump(Vec(0.0), -1.0, 1.0), std::invalid_argument);

    // gradient against central differences inside the support
    for (const auto& x : halton_points(centered_cube(1, 0.9), 50, 3)) {
        double h = 1e-6;
        double fd = (b(Vec(x[0] + h)) - b(Vec(x[0] - h))) / (2 * h);
        REQUIRE_THAT(b.gradient(x)[0], WithinAbs(fd, 1e-8));
    }
}

TEST_CASE("bump in two dimensions carries its Lipschitz bound") {
    TestFunction b = make_bump(Vec(0.0, 0.0), 2.0, 3.0);
    REQUIRE(b.lipschitz_bound.has_value());
    // max |grad| = 8h/(3 sqrt(3) R) at radius R/sqrt(3)
    double r = 2.0 / std::sqrt(3.0);
    REQUIRE_THAT(b.gradient(Vec(r, 0.0)).norm(), WithinRel(*b.lipschitz_bound, 1e-12));
    for (const auto& x : halton_points(centered_cube(2, 2.0), 200, 5))
        REQUIRE(b.gradient(x).norm() <= *b.lipschitz_bound * (1 + 1e-12));
}

TEST_CASE("cutoff family") {
    TestFunction xi1 = cutoff_xi(1, 1);
    REQUIRE_THAT(xi1(Vec(1.5)), WithinRel(0.5, 1e-15));
    TestFunction xi3 = cutoff_xi(3, 1);
    REQUIRE(xi3(Vec(7.0)) == 0.0);
    REQUIRE(xi3(Vec(2.0)) == 1.0);
    REQUIRE_THROWS_AS(cutoff_xi(0, 1), std::invalid_argument);

    SECTION("gradient lp bound d^{1/p}/n on the annulus") {
        for (int d : {1, 2, 3}) {
            for (int n : {1, 2, 4}) {
                TestFunction xi = cutoff_xi(n, d);
                Box annulus = centered_cube(d, 2.0 * n);
                for (const auto& x : halton_points(annulus, 200, 7)) {
                    double r = x.norm();
                    if (r <= n || r >= 2.0 * n) continue;
                    Vec g = xi.gradient(x);
                    for (double p : {1.0, 2.0}) {
                        double lp = 0;
                        for (int i = 0; i < d; ++i) lp += std::pow(std::abs(g[i]), p);
                        lp = std::pow(lp, 1.0 / p);
                        REQUIRE(lp <= std::pow(double(d), 1.0 / p) / n + 1e-12);
                    }
                }
            }
        }
    }
    SECTION("monotone in n, bounded by one, tends to one") {
        for (const auto& x : halton_points(centered_cube(1, 12.0), 100, 9)) {
            double prev = -1;
            for (int n : {1, 2, 3, 4, 8, 16}) {
                double v = cutoff_xi(n, 1)(x);
                REQUIRE(v >= 0.0);
                REQUIRE(v <= 1.0);
                REQUIRE(v >= prev);
                prev = v;
            }
            REQUIRE(cutoff_xi(16, 1)(x) == 1.0);  // |x| <= 12 < 16
        }
    }
}

TEST_CASE("pointwise product with the weak product rule") {
    TestFunction b = make_bump(Vec(0.0), 2.0, 1.0);
    SECTION("multiplying by one changes nothing") {
        TestFunction prod = multiply(b, constant_field(1, 1.0));
        for (double x : {-1.5, 0.0, 0.3, 1.9}) {
            REQUIRE(prod(Vec(x)) == b(Vec(x)));
            REQUIRE(prod.gradient(Vec(x))[0] == b.gradient(Vec(x))[0]);
        }
    }
    SECTION("cutoff acts as identity where it is one") {
        TestFunction small = make_bump(Vec(0.0), 1.0, 1.0);
        TestFunction prod = multiply(small, cutoff_xi(2, 1).field);
        for (const auto& x : halton_points(centered_cube(1, 1.0), 64, 11))
            REQUIRE(prod(x) == small(x));
    }
    SECTION("product gradient matches finite differences on the ramp") {
        TestFunction prod = multiply(b, cutoff_xi(1, 1).field);
        double x = 1.5, h = 1e-6;
        double fd = (prod(Vec(x + h)) - prod(Vec(x - h))) / (2 * h);
        REQUIRE_THAT(prod.gradient(Vec(x))[0], WithinAbs(fd, 1e-5));
    }
}

TEST_CASE("cutoff approximation converges in the weighted Sobolev norm") {
    // || phi - phi xi_n ||_{W^{1,p}(nu)} is non-increasing once n reaches the
    // support radius and drops to exactly zero when xi_n is one on the support
    QuadratureSpec spec = QuadratureSpec::defaults(1);
    TestFunction phi = make_hat(1, 2.0, 1.0);  // supported in [-3,3]
    for (const char* nu_name : {"one", "gauss"}) {
        Weight nu = std::string(nu_name) == "one" ? make_catalog_weight("one", {}, 1)
                                                  : make_catalog_weight("gauss", {1.0}, 1);
        for (double p : {1.0, 2.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (int n : {1, 2, 3, 4}) {
                TestFunction xi = cutoff_xi(n, 1);
                ScalarField complement;
                complement.dim = 1;
                complement.label = "1-xi";
                ScalarField xif = xi.field;
                complement.value = [xif](const Vec& x) { return 1.0 - xif(x); };
                complement.grad = [xif](const Vec& x) { return -1.0 * xif.gradient(x); };
                complement.radial_kinks = xif.radial_kinks;
                double err = w1p_norm(multiply(phi, complement), nu, p, spec).value;
                REQUIRE(err <= prev * (1 + 1e-12));
                prev = err;
                if (n >= 3) REQUIRE(err == 0.0);  // xi_n == 1 on supp(phi)
            }
        }
    }
}

TEST_CASE("mollifier") {
    TestFunction b = make_bump(Vec(0.0), 1.0, 1.0);
    QuadratureSpec spec = QuadratureSpec::defaults(1);

    SECTION("preconditions") {
        REQUIRE_THROWS_AS(mollify(b, 4, 1.0), std::invalid_argument);  // step > 1/(4n)
        TestFunction b3 = make_bump(Vec(0.0, 0.0, 0.0), 1.0, 1.0);
        REQUIRE_THROWS_AS(mollify(b3, 4, 0.01), std::invalid_argument);  // d=3
    }
    SECTION("mass is preserved") {
        for (int n : {4, 8}) {
            TestFunction m = mollify(b, n, 1.0 / (8.0 * n));
            auto orig = integrate(1, [&](const Vec& x) { return b(x); }, spec, b.field.support);
            auto moll = integrate(1, [&](const Vec& x) { return m(x); }, spec, m.field.support);
            REQUIRE_THAT(moll.value, WithinRel(orig.value, 1e-4));
        }
    }
    SECTION("smoothed function vanishes beyond the 1/n support growth") {
        int n = 4;
        TestFunction m = mollify(b, n, 1.0 / (8.0 * n));
        REQUIRE(m(Vec(1.0 + 2.0 / n)) == 0.0);
        REQUIRE(std::abs(m(Vec(1.0 + 0.5 / n))) > 0.0);
    }
    SECTION("L1 distance decreases monotonically in n on a hat") {
        TestFunction hat = make_hat(1, 1.0, 1.0);
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {4, 8, 16, 32}) {
            TestFunction m = mollify(hat, n, 1.0 / (4.0 * n * std::sqrt(double(n))));
            auto err = integrate(1, [&](const Vec& x) { return std::abs(hat(x) - m(x)); }, spec,
                                 m.field.support, hat.field.radial_kinks);
            REQUIRE(err.value < prev);
            prev = err.value;
        }
    }
    SECTION("gradient of the mollified bump tracks finite differences") {
        TestFunction m = mollify(b, 8, 1.0 / 64.0);
        for (double x : {-0.8, 0.2, 0.9}) {
            double h = 1e-6;
            double fd = (m(Vec(x + h)) - m(Vec(x - h))) / (2 * h);
            REQUIRE_THAT(m.gradient(Vec(x))[0], WithinAbs(fd, 1e-6));
        }
    }
}

TEST_CASE("mollifier works on a two-dimensional bump") {
    TestFunction b = make_bump(Vec(0.0, 0.0), 1.0, 1.0);
    TestFunction m = mollify(b, 4, 1.0 / 20.0);
    QuadratureSpec spec = QuadratureSpec::defaults(2);
    auto orig = integrate(2, [&](const Vec& x) { return b(x); }, spec, b.field.support);
    auto moll = integrate(2, [&](const Vec& x) { return m(x); }, spec, m.field.support);
    REQUIRE_THAT(moll.value, WithinRel(orig.value, 1e-3));
}
