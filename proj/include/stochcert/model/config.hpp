// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "stochcert/model/model.hpp"

namespace stochcert::model {

using json = nlohmann::json;

/// Builds a validated network from a config document. Every failure is a
/// ModelError whose path points into the document.
Network load_network(const json& doc);
Network load_network_file(const std::filesystem::path& path);

json emit_network(const Network& net);
json emit_subsystem(const Subsystem& sub);

// Shared helpers for documents that embed intervals and boxes.
Interval parse_interval(const json& j, const std::string& path);
std::vector<Interval> parse_box(const json& j, const std::string& path);
json emit_box(const std::vector<Interval>& box);

json read_json_file(const std::filesystem::path& path);

}  // namespace stochcert::model
