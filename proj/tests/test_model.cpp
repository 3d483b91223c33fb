// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "stochcert/model/config.hpp"
#include "stochcert/sim/rng.hpp"

using namespace stochcert::model;
using Catch::Approx;

namespace {

json scalar_doc() {
    return json::parse(R"({
      "subsystems": [{
        "dims": {"n": 1, "m": 0, "p": 0, "q": 1},
        "pi": [[1.0]],
        "modes": [{"dynamics": ["0.5*x1"]}],
        "h": ["x1"],
        "X": [[-2, 2]], "X0": [[-0.5, 0.5]], "Xu": [[[1.5, 2]]],
        "U": [], "W": []
      }],
      "interconnection": []
    })");
}

std::string error_of(const json& doc) {
    try {
        load_network(doc);
    } catch (const ModelError& e) {
        return e.path();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("stationary law of the room chain", "[model]") {
    MarkovChain chain({{0.3, 0.7}, {0.4, 0.6}});
    auto p = chain.stationary();
    REQUIRE(p.size() == 2);
    CHECK(p[0] == Approx(4.0 / 11.0).epsilon(1e-12));
    CHECK(p[1] == Approx(7.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("empirical mode frequency approaches the stationary law", "[model][property]") {
    MarkovChain chain({{0.3, 0.7}, {0.4, 0.6}});
    stochcert::sim::Xoshiro256 rng(99);
    std::size_t mode = 0, visits = 0;
    constexpr std::size_t kSteps = 100000;
    for (std::size_t k = 0; k < kSteps; ++k) {
        visits += mode == 0;
        mode = rng.uniform() < chain(mode, 0) ? 0 : 1;
    }
    CHECK(std::abs(static_cast<double>(visits) / kSteps - 4.0 / 11.0) < 0.01);
}

TEST_CASE("transition matrices are validated", "[model]") {
    CHECK_THROWS_AS(MarkovChain({}), ModelError);
    CHECK_THROWS_AS(MarkovChain({{0.5, 0.4}, {0.5, 0.5}}), ModelError);
    CHECK_THROWS_AS(MarkovChain({{1.2, -0.2}, {0.5, 0.5}}), ModelError);
    CHECK_THROWS_AS(MarkovChain({{1.0}, {0.5, 0.5}}), ModelError);
}

TEST_CASE("room network layout", "[model]") {
    auto net = room_casestudy(200);
    REQUIRE(net.size() == 200);
    CHECK(net.interconnection().size() == 400);
    CHECK(net.nonzeros() == 400);
    const auto& s = net.subsystem(17);
    CHECK(s.mode_count() == 2);
    CHECK(s.regions().W[0] == Interval{2.0, 100.0});
    CHECK(s.regions().Xu.size() == 2);
    // x+ = (1 - 2 theta - alpha) x - beta nu x + beta T_h nu + theta w + alpha T_o + g sigma
    const std::vector<double> pt{20.0, 0.5, 40.0, 0.0};
    CHECK(s.mode(0).dynamics[0].eval(pt) ==
          Approx(0.93 * 20 - 0.145 * 0.5 * 20 + 0.145 * 45 * 0.5 + 0.005 * 40 + 0.06 * -15));
    auto wp = check_well_posed(net);
    CHECK(wp.well_posed);

    auto two = room_casestudy(2);
    CHECK(two.interconnection().size() == 2);
    CHECK(two.subsystem(0).regions().W[0] == Interval{1.0, 50.0});
    CHECK(check_well_posed(two).well_posed);
    CHECK_THROWS(room_casestudy(1));
}

TEST_CASE("config round trip", "[model]") {
    auto net = room_casestudy(5);
    auto doc = emit_network(net);
    auto back = load_network(doc);
    CHECK(emit_network(back) == doc);
    auto scalar = load_network(scalar_doc());
    CHECK(scalar.subsystem(0).dims().state == 1);
}

TEST_CASE("malformed configs carry a path", "[model]") {
    auto doc = scalar_doc();
    doc["subsystems"][0]["pi"] = {{0.5}};
    CHECK(error_of(doc).rfind("/subsystems/0/pi", 0) == 0);

    doc = scalar_doc();
    doc["subsystems"][0]["X0"] = {{-3, 0}};
    CHECK(error_of(doc).find("X0") != std::string::npos);

    doc = scalar_doc();
    doc["subsystems"][0]["modes"][0]["dynamics"] = {"0.5*x1 + y"};
    CHECK(error_of(doc).find("dynamics") != std::string::npos);

    doc = scalar_doc();
    doc["bogus"] = 1;
    CHECK(error_of(doc) == "/bogus");

    doc = scalar_doc();
    doc["interconnection"] = {{0, 3, 1.0}};
    CHECK(error_of(doc).rfind("/interconnection", 0) == 0);

    doc = scalar_doc();
    doc["subsystems"][0]["X"] = {{2, -2}};
    CHECK(error_of(doc) != "<none>");
}
