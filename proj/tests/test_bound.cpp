// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "stochcert/bound/safety_bound.hpp"

using namespace stochcert::bound;
using Catch::Approx;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double reference(double g, double l, double k, double p, unsigned T) {
    const big G(g), L(l), K(k), P(p);
    big d;
    if (L >= P / (1 - K)) {
        d = 1 - (1 - G / L) * pow(1 - P / L, T);
    } else {
        d = (G / L) * pow(K, T) + P / ((1 - K) * L) * (1 - pow(K, T));
    }
    return std::min(1.0, std::max(0.0, d.convert_to<double>()));
}

}  // namespace

TEST_CASE("room constants", "[bound]") {
    auto r = safety_bound({28, 860, 0.92, 0.3, 100});
    CHECK(r.branch == 1);
    CHECK(r.delta == Approx(reference(28, 860, 0.92, 0.3, 100)).epsilon(1e-12));
    CHECK(1.0 - r.delta == Approx(0.9343).margin(1e-4));
}

TEST_CASE("trivial and clamped cases", "[bound]") {
    CHECK(safety_bound({0, 1, 0.5, 0, 50}).delta == 0.0);
    auto r = safety_bound({1, 1.5, 0.5, 1, 2});
    CHECK(r.branch == 2);
    CHECK(r.raw == Approx(7.0 / 6.0).epsilon(1e-14));
    CHECK(r.delta == 1.0);
    CHECK(safety_bound({0.3, 1, 0.5, 0, 0}).delta == Approx(0.3));
}

TEST_CASE("invalid constants are rejected", "[bound]") {
    CHECK_THROWS_AS(safety_bound({2, 1, 0.5, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(safety_bound({0, 1, 1.0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(safety_bound({0, 1, 0.5, -1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(safety_bound({-1, 1, 0.5, 0, 1}), std::invalid_argument);
}

TEST_CASE("bound agrees with extended precision", "[bound][property]") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<unsigned> T(0, 500);
    for (int trial = 0; trial < 500; ++trial) {
        const double l = 1.0 + 100.0 * u(rng);
        const double g = l * u(rng) * 0.999;
        const double k = 0.01 + 0.98 * u(rng);
        const double p = 10.0 * u(rng) * u(rng);
        const unsigned h = T(rng);
        auto r = safety_bound({g, l, k, p, h});
        CHECK(r.delta == Approx(reference(g, l, k, p, h)).epsilon(1e-11).margin(1e-15));
        CHECK(r.delta >= 0.0);
        CHECK(r.delta <= 1.0);
    }
}

TEST_CASE("bound grows with the horizon on branch 1", "[bound][property]") {
    double prev = 0.0;
    for (unsigned t = 0; t <= 1000; t += 50) {
        const double d = safety_bound({28, 860, 0.92, 0.3, t}).delta;
        CHECK(d >= prev);
        prev = d;
    }
}
