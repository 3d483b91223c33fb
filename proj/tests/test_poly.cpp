// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "stochcert/poly/interval.hpp"
#include "stochcert/poly/polynomial.hpp"

using namespace stochcert::poly;
using Catch::Approx;

namespace {

VarSpacePtr xy_space() { return VarSpace::standard(2, 0, 0, 0); }

Polynomial random_poly(const VarSpacePtr& sp, std::mt19937_64& rng, unsigned deg, std::size_t terms) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<std::size_t> vars(sp->size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        vars[i] = i;
    }
    auto monos = monomials_up_to(sp->size(), vars, deg);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    Polynomial::Terms t;
    for (std::size_t k = 0; k < terms; ++k) {
        t[monos[pick(rng)]] += c(rng);
    }
    return Polynomial(sp, t);
}

}  // namespace

TEST_CASE("varspace standard layout", "[poly]") {
    auto sp = VarSpace::standard(2, 1, 1, 1);
    REQUIRE(sp->size() == 5);
    CHECK(sp->var(0).name == "x1");
    CHECK(sp->var(2).name == "nu1");
    CHECK(sp->var(3).name == "w1");
    CHECK(sp->var(4).name == "sigma1");
    CHECK(sp->indices_with_role(VarRole::noise) == std::vector<std::size_t>{4});
    CHECK_FALSE(sp->find("y").has_value());
    CHECK_THROWS(sp->index_of("y"));
}

TEST_CASE("arithmetic agrees with pointwise evaluation", "[poly][property]") {
    auto sp = xy_space();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_poly(sp, rng, 3, 6);
        auto q = random_poly(sp, rng, 3, 6);
        const double pt[2] = {u(rng), u(rng)};
        const double a = p.eval(pt), b = q.eval(pt);
        CHECK((p + q).eval(pt) == Approx(a + b).margin(1e-12));
        CHECK((p - q).eval(pt) == Approx(a - b).margin(1e-12));
        CHECK((p * q).eval(pt) == Approx(a * b).margin(1e-10));
        CHECK(p.pow(3).eval(pt) == Approx(a * a * a).margin(1e-9));
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("text form round trips", "[poly]") {
    auto sp = xy_space();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_poly(sp, rng, 4, 8);
        auto back = Polynomial::parse(sp, p.to_string());
        CHECK(back.approx_equal(p, 0.0));
    }
    auto p = Polynomial::parse(sp, "0.00242*x1^4 - 0.091*x1^3 + 3.1329");
    CHECK(p.degree() == 4);
    CHECK(p.coefficient({3, 0}) == -0.091);
    CHECK(p.constant_term() == 3.1329);
    CHECK_THROWS(Polynomial::parse(sp, "x1 + z"));
    CHECK_THROWS(Polynomial::parse(sp, "x1 +"));
}

TEST_CASE("substitution composes", "[poly]") {
    auto sp = xy_space();
    auto x = Polynomial::variable(sp, "x1");
    auto y = Polynomial::variable(sp, "x2");
    auto p = x * x + y;
    auto q = p.substitute({{0, y + x.scale(2.0)}});
    const double pt[2] = {0.5, -1.5};
    CHECK(q.eval(pt) == Approx(std::pow(-1.5 + 1.0, 2) - 1.5));
}

TEST_CASE("normal moments", "[poly]") {
    CHECK(standard_normal_moment(0) == 1.0);
    CHECK(standard_normal_moment(1) == 0.0);
    CHECK(standard_normal_moment(2) == 1.0);
    CHECK(standard_normal_moment(3) == 0.0);
    CHECK(standard_normal_moment(4) == 3.0);
    CHECK(standard_normal_moment(6) == 15.0);
    CHECK(standard_normal_moment(8) == 105.0);
}

TEST_CASE("gaussian expectation of (a + b sigma)^4", "[poly]") {
    auto sp = VarSpace::standard(1, 0, 0, 1);
    auto x = Polynomial::variable(sp, "x1");
    auto s = Polynomial::variable(sp, "sigma1");
    auto e = gaussian_expectation((x + 0.5 * s).pow(4));
    // a^4 + 6 a^2 b^2 + 3 b^4
    auto expect = x.pow(4) + 1.5 * x.pow(2) + Polynomial::constant(sp, 3.0 * 0.0625);
    CHECK(e.approx_equal(expect, 1e-14));
    CHECK_FALSE(e.depends_on(1));
}

TEST_CASE("gaussian expectation matches Monte Carlo", "[poly][property]") {
    auto sp = VarSpace::standard(1, 0, 0, 2);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    constexpr int kSamples = 400000;
    std::vector<std::pair<double, double>> draws(kSamples);
    for (auto& d : draws) {
        d = {z(rng), z(rng)};
    }
    for (int trial = 0; trial < 5; ++trial) {
        auto p = random_poly(sp, rng, 4, 8).add_constant(3.0);
        const double x = 0.7;
        const double exact = gaussian_expectation(p).eval(std::vector<double>{x, 0.0, 0.0});
        double sum = 0.0;
        for (const auto& [s1, s2] : draws) {
            sum += p.eval(std::vector<double>{x, s1, s2});
        }
        CHECK(std::abs(sum / kSamples - exact) <= 0.05 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("interval arithmetic", "[poly]") {
    Interval a{-1.0, 2.0}, b{3.0, 4.0};
    // Endpoints may be rounded outward, never inward.
    auto tight = [](const Interval& got, const Interval& want) {
        return got.contains(want) && got.lo >= want.lo - 1e-12 && got.hi <= want.hi + 1e-12;
    };
    CHECK(tight(a + b, {2.0, 6.0}));
    CHECK(tight(a * b, {-4.0, 8.0}));
    CHECK(tight(ipow(a, 2), {0.0, 4.0}));
    CHECK(tight(ipow(a, 3), {-1.0, 8.0}));
    CHECK(tight(-2.0 * b, {-8.0, -6.0}));
}

TEST_CASE("compiled bound encloses the range", "[poly][property]") {
    auto sp = xy_space();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0), w(0.01, 2.0), t(0.0, 1.0);
    const std::vector<std::size_t> vars{0, 1};
    for (int trial = 0; trial < 500; ++trial) {
        auto p = random_poly(sp, rng, 4, 10);
        CompiledPoly cp(p, vars);
        std::vector<Interval> box;
        for (int d = 0; d < 2; ++d) {
            const double lo = u(rng);
            box.push_back({lo, lo + w(rng)});
        }
        const auto enc = cp.bound(box);
        for (int k = 0; k < 50; ++k) {
            const double pt[2] = {box[0].lo + t(rng) * box[0].width(), box[1].lo + t(rng) * box[1].width()};
            const double v = p.eval(pt);
            REQUIRE(enc.lo <= v);
            REQUIRE(v <= enc.hi);
            CHECK(cp.eval_local(pt) == Approx(v).margin(1e-12));
        }
    }
}

TEST_CASE("monomial enumeration counts", "[poly]") {
    const std::vector<std::size_t> vars{0, 1, 2};
    // C(n + d, d)
    CHECK(monomials_up_to(3, vars, 4).size() == 35);
    CHECK(monomials_up_to(3, std::vector<std::size_t>{1}, 4).size() == 5);
}

TEST_CASE("mixed spaces are rejected", "[poly]") {
    auto a = Polynomial::variable(VarSpace::standard(1, 0, 0, 0), 0);
    auto b = Polynomial::variable(VarSpace::standard(2, 0, 0, 0), 0);
    CHECK_THROWS_AS(a + b, DimensionError);
}
