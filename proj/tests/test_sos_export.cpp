// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "stochcert/synth/sos_export.hpp"

using namespace stochcert;
using namespace stochcert::synth;

TEST_CASE("room program layout", "[sos]") {
    auto net = model::room_casestudy(200);
    const auto text = export_sos(net.subsystem(0), Template{});
    auto s = parse_sos_export(text);
    CHECK(s.sections == std::vector<std::string>{"sets", "templates", "expression-15", "expression-16",
                                                 "expression-17"});
    CHECK(s.constraints == 8);
    CHECK(s.constraints_per_section.at("expression-15") == 2);
    CHECK(s.constraints_per_section.at("expression-16") == 4);
    CHECK(s.constraints_per_section.at("expression-17") == 2);
    CHECK(s.degrees.at("l0") == 4);
    CHECK(text.find("E[B_1(F_1") != std::string::npos);
    CHECK(text.find("0.7*E[B_2(F_1") != std::string::npos);
}

TEST_CASE("multiplier degrees round trip", "[sos][property]") {
    auto net = model::room_casestudy(3);
    for (unsigned d : {2u, 4u, 6u}) {
        MultiplierDegrees deg{{"l0", d}, {"lu", d + 2}, {"l", d}, {"lw", d}, {"lnu", d}};
        auto s = parse_sos_export(export_sos(net.subsystem(0), Template{}, deg));
        for (const auto& [name, value] : deg) {
            CHECK(s.degrees.at(name) == value);
        }
    }
    CHECK_THROWS(export_sos(net.subsystem(0), Template{}, {{"bogus", 2}}));
}

TEST_CASE("noise-free single-mode program", "[sos]") {
    auto sub = fixtures::scalar_subsystem();
    Template t;
    t.degree = 2;
    const auto text = export_sos(sub, t);
    auto s = parse_sos_export(text);
    CHECK(s.constraints == 3);
    CHECK(text.find("E[") == std::string::npos);
    CHECK(text.find("B_1(F_1(") != std::string::npos);
}

TEST_CASE("malformed programs are rejected", "[sos]") {
    CHECK_THROWS(parse_sos_export("sos mode=1: x\n"));
    CHECK_THROWS(parse_sos_export("[sets]\n[sets]\n"));
    CHECK_THROWS(parse_sos_export("[nonsense]\n"));
    CHECK_NOTHROW(parse_sos_export("# comment only\n"));
}
