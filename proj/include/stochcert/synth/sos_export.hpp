// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stochcert/synth/template.hpp"

namespace stochcert::synth {

/// Degrees of the multiplier polynomials l0, lu, l, lw, lnu. Missing entries
/// default to the certificate degree.
using MultiplierDegrees = std::map<std::string, unsigned>;

/// Plain-text SOS program for an external toolchain. One `sos` line per
/// constraint; an unsafe set with k boxes gives k constraints in
/// [expression-16].
std::string export_sos(const Subsystem& sub, const Template& tmpl, const MultiplierDegrees& degrees = {});

struct SosSummary {
    std::vector<std::string> sections;
    std::map<std::string, std::size_t> constraints_per_section;
    std::size_t constraints = 0;
    MultiplierDegrees degrees;
};

/// Reads a document written by export_sos. Throws std::invalid_argument on
/// unknown sections or lines outside a section.
SosSummary parse_sos_export(std::string_view text);

}  // namespace stochcert::synth
