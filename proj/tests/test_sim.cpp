// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "stochcert/sim/rng.hpp"
#include "stochcert/sim/simulate.hpp"

using namespace stochcert;
using namespace stochcert::sim;
using Catch::Approx;

namespace {

SimConfig small_config() {
    SimConfig cfg;
    cfg.trials = 40;
    cfg.horizon = 30;
    cfg.seed = 9;
    return cfg;
}

std::size_t data_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

}  // namespace

TEST_CASE("normal draws have standard moments", "[sim][property]") {
    Xoshiro256 rng(1234);
    constexpr int n = 1'000'000;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        m1 += z;
        m2 += z * z;
        m3 += z * z * z;
        m4 += z * z * z * z;
    }
    CHECK(m1 / n == Approx(0.0).margin(5e-3));
    CHECK(m2 / n == Approx(1.0).margin(1e-2));
    CHECK(m3 / n == Approx(0.0).margin(2e-2));
    CHECK(m4 / n == Approx(3.0).margin(5e-2));
}

TEST_CASE("uniform draws stay in [0, 1)", "[sim][property]") {
    Xoshiro256 rng(5);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000 == Approx(0.5).margin(5e-3));
    CHECK(child_seed(42, 0) != child_seed(42, 1));
    CHECK(child_seed(42, 7) == child_seed(42, 7));
}

TEST_CASE("binomial cdf matches boost", "[sim]") {
    for (std::size_t n : {1u, 10u, 100u, 1000u}) {
        for (double p : {0.001, 0.05, 0.5, 0.93}) {
            boost::math::binomial_distribution<double> d(static_cast<double>(n), p);
            for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 7)) {
                CHECK(binomial_cdf(k, n, p) == Approx(boost::math::cdf(d, static_cast<double>(k))).margin(1e-12));
            }
        }
    }
}

TEST_CASE("Clopper-Pearson limits match the beta quantiles", "[sim]") {
    for (std::size_t n : {10u, 100u, 1000u}) {
        for (std::size_t k : {std::size_t{0}, std::size_t{1}, n / 3, n - 1, n}) {
            auto ci = clopper_pearson(k, n, 0.05);
            const double lo = k == 0 ? 0.0 : boost::math::ibeta_inv(double(k), double(n - k + 1), 0.025);
            const double hi = k == n ? 1.0 : boost::math::ibeta_inv(double(k + 1), double(n - k), 0.975);
            CHECK(ci.lo == Approx(lo).margin(1e-9));
            CHECK(ci.hi == Approx(hi).margin(1e-9));
        }
    }
}

TEST_CASE("simulation is reproducible and thread independent", "[sim][property]") {
    auto net = model::room_casestudy(5);
    auto ctrl = controllers_from(fixtures::room_certificates(net));
    auto cfg = small_config();
    cfg.record = true;
    auto a = simulate(net, ctrl, cfg);
    cfg.threads = 4;
    auto b = simulate(net, ctrl, cfg);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t t = 0; t < a.trials.size(); ++t) {
        CHECK(a.trials[t].unsafe == b.trials[t].unsafe);
        CHECK(a.trials[t].clamp_events == b.trials[t].clamp_events);
        REQUIRE(a.trials[t].traces.size() == b.trials[t].traces.size());
        for (std::size_t s = 0; s < a.trials[t].traces.size(); ++s) {
            CHECK(a.trials[t].traces[s].states == b.trials[t].traces[s].states);
            CHECK(a.trials[t].traces[s].modes == b.trials[t].traces[s].modes);
        }
    }
    CHECK(trajectories_csv(a) == trajectories_csv(b));
    cfg.seed = 10;
    auto c = simulate(net, ctrl, cfg);
    CHECK(trajectories_csv(a) != trajectories_csv(c));
}

TEST_CASE("trajectory export layout", "[sim]") {
    auto net = model::room_casestudy(4);
    auto ctrl = controllers_from(fixtures::room_certificates(net));
    SimConfig cfg;
    cfg.trials = 10;
    cfg.horizon = 100;
    cfg.record = true;
    cfg.tracked = {2};
    auto res = simulate(net, ctrl, cfg);
    const auto csv = trajectories_csv(res, {"seed: 42"});
    CHECK(csv.rfind("# seed: 42\ntrial,step,subsystem,mode,x1\n", 0) == 0);
    CHECK(data_rows(csv) == 1010);

    cfg.tracked.clear();
    CHECK(data_rows(trajectories_csv(simulate(net, ctrl, cfg))) == 4040);

    cfg.record = false;
    CHECK_THROWS_AS(trajectories_csv(simulate(net, ctrl, cfg)), std::invalid_argument);
}

TEST_CASE("violations are detected from the first step", "[sim]") {
    auto net = model::room_casestudy(3);
    auto ctrl = controllers_from(fixtures::room_certificates(net));
    auto cfg = small_config();
    cfg.init = InitPolicy::fixed;
    cfg.fixed_state = {20.0, 10.0, 20.0};
    auto s = estimate_violation(net, ctrl, cfg);
    CHECK(s.violations == s.trials);
    CHECK(s.p_hat == 1.0);
    auto r = simulate(net, ctrl, cfg);
    CHECK(r.trials[0].first_violation == std::size_t{0});
}

TEST_CASE("clamping is counted and can be disabled", "[sim]") {
    auto net = model::room_casestudy(3);
    auto ctrl = controllers_from(fixtures::room_certificates(net));
    auto cfg = small_config();
    cfg.init = InitPolicy::fixed;
    // The mode-2 controller exceeds 1 below x = 5.9.
    cfg.fixed_state = {2.0, 2.0, 2.0};
    cfg.initial_mode = 1;
    // Recording keeps trials running past the first violation.
    cfg.record = true;
    auto clamped = simulate(net, ctrl, cfg).summary;
    CHECK(clamped.clamp_events > 0);
    cfg.clamp = false;
    CHECK(simulate(net, ctrl, cfg).summary.clamp_events == 0);
}

TEST_CASE("shared switching moves every room together", "[sim]") {
    auto net = model::room_casestudy(4);
    auto ctrl = controllers_from(fixtures::room_certificates(net));
    auto cfg = small_config();
    cfg.record = true;
    cfg.coupling = model::ModeCoupling::shared;
    auto r = simulate(net, ctrl, cfg);
    CHECK(r.summary.coupling == model::ModeCoupling::shared);
    for (const auto& t : r.trials) {
        for (std::size_t s = 1; s < t.traces.size(); ++s) {
            CHECK(t.traces[s].modes == t.traces[0].modes);
        }
    }
}

TEST_CASE("missing controllers are rejected", "[sim]") {
    auto net = model::room_casestudy(3);
    auto ctrl = controllers_from(fixtures::room_certificates(net));
    ctrl[1][0].clear();
    CHECK_THROWS_AS(simulate(net, ctrl, small_config()), std::invalid_argument);
    ctrl.pop_back();
    CHECK_THROWS_AS(simulate(net, ctrl, small_config()), std::invalid_argument);
}

TEST_CASE("controllers from an equal network are accepted", "[sim]") {
    auto other = model::room_casestudy(3);
    auto ctrl = controllers_from(fixtures::room_certificates(other));
    auto net = model::room_casestudy(3);
    CHECK_NOTHROW(simulate(net, ctrl, small_config()));
}
