// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lp_oracle.hpp"
#include "stochcert/synth/simplex.hpp"

using namespace stochcert::synth;
using Catch::Approx;

TEST_CASE("textbook LP", "[simplex]") {
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
    LinearProgram lp;
    auto x = lp.add_var("x", 0, kInf, 3);
    auto y = lp.add_var("y", 0, kInf, 5);
    lp.add_le({{x, 1}}, 4);
    lp.add_le({{y, 2}}, 12);
    lp.add_le({{x, 3}, {y, 2}}, 18);
    auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == Approx(36));
    CHECK(r.x[0] == Approx(2));
    CHECK(r.x[1] == Approx(6));
}

TEST_CASE("infeasible and unbounded programs", "[simplex]") {
    LinearProgram a;
    auto x = a.add_var("x", 0, kInf, 1);
    a.add_ge({{x, 1}}, 3);
    a.add_le({{x, 1}}, 2);
    CHECK(lp_solve(a).status == LpStatus::infeasible);

    LinearProgram b;
    auto u = b.add_var("u", 0, kInf, 1);
    auto v = b.add_var("v", 0, kInf, 0);
    b.add_le({{u, 1}, {v, -1}}, 1);
    CHECK(lp_solve(b).status == LpStatus::unbounded);
}

TEST_CASE("degenerate program that cycles under the largest-coefficient rule", "[simplex]") {
    // Beale's example in maximization form.
    LinearProgram lp;
    auto x1 = lp.add_var("x1", 0, kInf, 0.75);
    auto x2 = lp.add_var("x2", 0, kInf, -150);
    auto x3 = lp.add_var("x3", 0, kInf, 0.02);
    auto x4 = lp.add_var("x4", 0, kInf, -6);
    lp.add_le({{x1, 0.25}, {x2, -60}, {x3, -0.04}, {x4, 9}}, 0);
    lp.add_le({{x1, 0.5}, {x2, -90}, {x3, -0.02}, {x4, 3}}, 0);
    lp.add_le({{x3, 1}}, 1);
    auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == Approx(0.05));
}

TEST_CASE("free variables and equality pairs", "[simplex]") {
    LinearProgram lp;
    auto x = lp.add_var("x", -kInf, kInf, 1);
    auto y = lp.add_var("y", -kInf, kInf, -1);
    lp.add_le({{x, 1}, {y, 1}}, 2);
    lp.add_ge({{x, 1}, {y, 1}}, 2);
    lp.add_le({{x, 1}, {y, -1}}, 1);
    auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == Approx(1));
    CHECK(r.x[0] + r.x[1] == Approx(2));
}

TEST_CASE("invalid programs are rejected", "[simplex]") {
    LinearProgram lp;
    auto x = lp.add_var("x", 0, 1, 1);
    lp.add_le({{x + 3, 1}}, 1);
    CHECK_THROWS_AS(lp_solve(lp), std::invalid_argument);
    LinearProgram inverted;
    inverted.add_var("z", 1, 0, 0);
    CHECK_THROWS_AS(lp_solve(inverted), std::invalid_argument);
    LinearProgram nan;
    nan.add_var("x", 0, 1, std::nan(""));
    CHECK_THROWS_AS(lp_solve(nan), std::invalid_argument);
}

TEST_CASE("solver agrees with vertex enumeration", "[simplex][property]") {
    std::mt19937_64 rng(17);
    std::size_t infeasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto lp = lp_oracle::random_program(rng, 2 + trial % 3, 2 + trial % 5);
        auto want = lp_oracle::enumerate(lp);
        auto got = lp_solve(lp);
        REQUIRE((got.status == LpStatus::optimal) == want.has_value());
        if (want) {
            CHECK(got.value == Approx(*want).margin(1e-7).epsilon(1e-7));
            for (const auto& row : lp.rows) {
                double lhs = 0.0;
                for (auto [j, a] : row.coeffs) {
                    lhs += a * got.x[j];
                }
                CHECK(lhs <= row.rhs + 1e-7);
            }
        } else {
            ++infeasible;
        }
    }
    CHECK(infeasible > 0);
}

TEST_CASE("tightening a row never raises the optimum", "[simplex][property]") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> pick(0, 1000);
    for (int trial = 0; trial < 100; ++trial) {
        auto lp = lp_oracle::random_program(rng, 3, 4);
        auto base = lp_solve(lp);
        if (base.status != LpStatus::optimal) {
            continue;
        }
        auto tighter = lp;
        tighter.rows[pick(rng) % tighter.rows.size()].rhs -= 0.3;
        auto r = lp_solve(tighter);
        if (r.status == LpStatus::optimal) {
            CHECK(r.value <= base.value + 1e-9);
        }
    }
}
