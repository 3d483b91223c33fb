// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stochcert/certify/verify.hpp"
#include "stochcert/model/config.hpp"

namespace stochcert::certify {

using json = nlohmann::json;

/// Provenance block embedded in every emitted artifact. No timestamps, so
/// identical runs produce identical files.
struct RunManifest {
    std::string command;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> tolerances;
    std::string output_dir;
    std::string version = STOCHCERT_VERSION;

    json to_json() const;
};

/// Certificate file: {"certificates": [{"subsystems": "all" | [i, ...],
/// "X": matrix, "modes": [{"B", "kappa", "gamma", "lambda", "psi",
/// "controller"}]}]}. Returns one certificate per subsystem; every
/// subsystem must be covered exactly once. Schema errors are ModelErrors.
std::vector<StorageCertificate> load_certificates(const json& doc, const Network& net);

/// Groups identical certificates under "all" when possible.
json emit_certificates(const std::vector<StorageCertificate>& cscs);
json emit_certificate(const StorageCertificate& csc);

json outcome_to_json(const poly::NonnegOutcome& o, const poly::VarSpace* space);
json report_to_json(const VerificationReport& r, const poly::VarSpace* space);
json falsify_to_json(const FalsifyResult& r, const poly::VarSpace* space);

}  // namespace stochcert::certify
