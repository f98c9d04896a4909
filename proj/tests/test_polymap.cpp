#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pfdyn/polymap.hpp"
#include "pfdyn/rng.hpp"
#include "pfdyn/systems.hpp"

using namespace pfdyn;

namespace {

PolyMap lorenz_classic() { return lorenz_field({10.0, 28.0, 8.0 / 3.0}); }

}  // namespace

TEST_CASE("evaluate: logistic field vanishes at its fixed points") {
    const PolyMap f = make_logistic(1.0);
    CHECK(f.evaluate({0.0})[0] == 0.0);
    CHECK(f.evaluate({1.0})[0] == 0.0);
    CHECK(f.evaluate({0.5})[0] == doctest::Approx(0.25));
}

TEST_CASE("evaluate: Lorenz field at the origin and at (1,1,1)") {
    const PolyMap f = lorenz_classic();
    const auto at0 = f.evaluate({0.0, 0.0, 0.0});
    CHECK(at0[0] == 0.0);
    CHECK(at0[1] == 0.0);
    CHECK(at0[2] == 0.0);

    // sigma(b-a) = 0, rho a - b - ac = 26, -beta c + ab = -5/3
    const auto at1 = f.evaluate({1.0, 1.0, 1.0});
    CHECK(at1[0] == doctest::Approx(0.0));
    CHECK(at1[1] == doctest::Approx(26.0));
    CHECK(at1[2] == doctest::Approx(-5.0 / 3.0));
}

TEST_CASE("evaluate rejects dimension mismatches") {
    const PolyMap f = make_logistic(1.0);
    CHECK_THROWS_AS(f.evaluate({1.0, 2.0}), InputError);
}

TEST_CASE("jacobian: d/da of a^2 is 2a") {
    const PolyMap f(1, {Polynomial::from_terms(1, {{1.0, {2}}})});
    const auto jac = f.jacobian();
    CHECK(jac.at(0, 0).terms().size() == 1);
    CHECK(jac.at(0, 0).terms()[0].coef == 2.0);
    CHECK(jac.at(0, 0).terms()[0].powers[0] == 1);
}

TEST_CASE("jacobian: Lorenz at the origin") {
    const auto j = lorenz_classic().jacobian().evaluate(std::vector<double>{0.0, 0.0, 0.0});
    CHECK(j(0, 0) == -10.0);
    CHECK(j(0, 1) == 10.0);
    CHECK(j(0, 2) == 0.0);
    CHECK(j(1, 0) == 28.0);
    CHECK(j(1, 1) == -1.0);
    CHECK(j(1, 2) == 0.0);
    CHECK(j(2, 0) == 0.0);
    CHECK(j(2, 1) == 0.0);
    CHECK(j(2, 2) == doctest::Approx(-8.0 / 3.0));
}

TEST_CASE("jacobian: logistic derivative is alpha(1 - 2a)") {
    const double alpha = 1.7;
    const auto jac = make_logistic(alpha).jacobian();
    for (double a : {-0.3, 0.0, 0.4, 1.2}) {
        const double expected = alpha * (1.0 - 2.0 * a);
        CHECK(jac.at(0, 0)(std::vector<double>{a}) == doctest::Approx(expected));
    }
}

TEST_CASE("jacobian matches central finite differences at random points") {
    const PolyMap f = lorenz_classic();
    const auto jac = f.jacobian();
    CounterRng rng(17);
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(3);
        for (auto& v : x) v = rng.uniform(-5.0, 5.0);
        const auto j = jac.evaluate(x);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                auto xp = x, xm = x;
                xp[c] += h;
                xm[c] -= h;
                const double fd = (f.evaluate(xp)[r] - f.evaluate(xm)[r]) / (2.0 * h);
                const double scale = std::max(1.0, std::abs(j(r, c)));
                CHECK(std::abs(fd - j(r, c)) / scale < 1e-6);
            }
    }
}

TEST_CASE("translate: identity map is invariant") {
    const PolyMap id = PolyMap::identity(3);
    const std::vector<double> alpha{1.5, -2.0, 0.25};
    CHECK(id.translated(alpha) == id);
}

TEST_CASE("translate: a^2 by 1 gives a^2 + 2a") {
    const PolyMap f(1, {Polynomial::from_terms(1, {{1.0, {2}}})});
    const std::vector<double> alpha{1.0};
    const PolyMap g = f.translated(alpha);
    const PolyMap expected(1, {Polynomial::from_terms(1, {{2.0, {1}}, {1.0, {2}}})});
    CHECK(g == expected);
}

TEST_CASE("translate by a zero of F kills the constant term") {
    const LorenzParams p{10.0, 28.0, 8.0 / 3.0};
    const PolyMap f = lorenz_field(p);
    const auto wing = p.fixed_point_plus();
    const PolyMap g = f.translated(std::vector<double>(wing.begin(), wing.end()));
    const std::vector<double> zero3{0.0, 0.0, 0.0};
    for (double v : g.evaluate(zero3)) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("translate round trip and evaluation identity at random points") {
    const PolyMap f = lorenz_classic();
    CounterRng rng(3);
    std::vector<double> alpha(3), x(3), xa(3);
    for (int trial = 0; trial < 50; ++trial) {
        for (auto& v : alpha) v = rng.uniform(-3.0, 3.0);
        const PolyMap g = f.translated(alpha);

        std::vector<double> neg(3);
        for (int i = 0; i < 3; ++i) neg[i] = -alpha[i];
        CHECK(g.translated(neg) == f);

        for (auto& v : x) v = rng.uniform(-3.0, 3.0);
        for (int i = 0; i < 3; ++i) xa[i] = x[i] + alpha[i];
        const auto lhs = g.evaluate(x);
        const auto rhs = f.evaluate(xa);
        for (int i = 0; i < 3; ++i) {
            const double scale = std::max(1.0, std::abs(rhs[i] - alpha[i]));
            CHECK(std::abs(lhs[i] - (rhs[i] - alpha[i])) / scale < 1e-12);
        }
    }
}

TEST_CASE("canonicalization: map plus its negation is the zero map") {
    const PolyMap f = lorenz_classic();
    const PolyMap zero = f + f.scaled(-1.0);
    CHECK(zero == PolyMap::zero(3, 3));
}

TEST_CASE("canonical form is idempotent") {
    // Duplicated powers and zero coefficients collapse on construction.
    auto p = Polynomial::from_terms(2, {{1.0, {1, 0}}, {2.0, {1, 0}}, {0.0, {0, 2}}, {-3.0, {1, 1}}});
    CHECK(p.terms().size() == 2);
    auto q = Polynomial::from_terms(2, {p.terms().begin(), p.terms().end()});
    CHECK(p == q);
}

TEST_CASE("decompose: Lorenz with a-block {a}") {
    const PolyMap f = lorenz_classic();
    const std::vector<int> a_block{0};
    const auto dec = decompose_partial_linear(f, a_block);
    REQUIRE(dec.has_value());

    CHECK(dec->lambda.size() == 1);
    CHECK(dec->lambda[0] == -10.0);  // -sigma on the a-row
    CHECK(dec->lambda_prime.size() == 2);
    CHECK(dec->lambda_prime[0] == -1.0);
    CHECK(dec->lambda_prime[1] == doctest::Approx(-8.0 / 3.0));

    // A-rows carry the cross terms: rho a - ac in the b-row, ab in the c-row.
    const std::vector<int> pw_ac{1, 0, 1}, pw_ab{1, 1, 0}, pw_a{1, 0, 0};
    CHECK(dec->A.component(0).coefficient(pw_ac) == -1.0);
    CHECK(dec->A.component(0).coefficient(pw_a) == 28.0);
    CHECK(dec->A.component(1).coefficient(pw_ab) == 1.0);

    // sigma b is the pure-b remainder of the linear a-row.
    const std::vector<int> pw_b{0, 1, 0};
    CHECK(dec->D.component(0).coefficient(pw_b) == 10.0);
    CHECK(dec->C.component(0).is_zero());
    CHECK(dec->B.component(0).is_zero());
    CHECK(dec->B.component(1).is_zero());

    CHECK(dec->recompose() == f);
}

TEST_CASE("decompose: no split exists in dimension 1") {
    const PolyMap f(1, {Polynomial::from_terms(1, {{1.0, {2}}})});
    CHECK(decompose_partial_linear_search(f).empty());
}

TEST_CASE("decompose: pure diagonal linear field has the trivial structure") {
    std::vector<Polynomial> comps;
    comps.push_back(Polynomial::variable(2, 0).scaled(0.5));
    comps.push_back(Polynomial::variable(2, 1).scaled(-1.25));
    const PolyMap f(2, std::move(comps));
    const std::vector<int> a_block{0};
    const auto dec = decompose_partial_linear(f, a_block);
    REQUIRE(dec.has_value());
    CHECK(dec->lambda[0] == 0.5);
    CHECK(dec->lambda_prime[0] == -1.25);
    CHECK(dec->A.component(0).is_zero());
    CHECK(dec->B.component(0).is_zero());
    CHECK(dec->C.component(0).is_zero());
    CHECK(dec->D.component(0).is_zero());
    CHECK(dec->recompose() == f);
}

TEST_CASE("decompose search: recomposition is coefficient-exact for every split") {
    const PolyMap f = lorenz_classic();
    const auto all = decompose_partial_linear_search(f);
    CHECK(!all.empty());
    bool found_a = false;
    for (const auto& dec : all) {
        CHECK(dec.recompose() == f);
        if (dec.a_block == std::vector<int>{0}) found_a = true;
    }
    CHECK(found_a);
}

TEST_CASE("system JSON round trip with parameter substitution") {
    const std::string text = R"({
        "dim": 3,
        "vars": ["a", "b", "c"],
        "params": {"sigma": 10.0, "rho": 28.0, "beta": 2.6666666666666665},
        "components": [
            [{"coef": "sigma", "powers": [0,1,0]}, {"coef": "-sigma", "powers": [1,0,0]}],
            [{"coef": "rho", "powers": [1,0,0]}, {"coef": -1.0, "powers": [0,1,0]},
             {"coef": -1.0, "powers": [1,0,1]}],
            [{"coef": "-beta", "powers": [0,0,1]}, {"coef": 1.0, "powers": [1,1,0]}]
        ]
    })";
    const SystemDefinition sys = load_system_json(text);
    CHECK(sys.map == lorenz_field({10.0, 28.0, 2.6666666666666665}));

    const SystemDefinition again = load_system_json(system_to_json(sys));
    CHECK(again.map == sys.map);
    CHECK(again.vars == sys.vars);
}

TEST_CASE("system JSON rejects malformed input") {
    CHECK_THROWS_AS(load_system_json("{"), InputError);
    CHECK_THROWS_AS(load_system_json(R"({"dim": 1})"), InputError);
    CHECK_THROWS_AS(load_system_json(
                        R"({"dim": 1, "components": [[{"coef": "nope", "powers": [1]}]]})"),
                    InputError);
    CHECK_THROWS_AS(load_system_json(
                        R"({"dim": 2, "components": [[{"coef": 1.0, "powers": [1]}]]})"),
                    InputError);
}
