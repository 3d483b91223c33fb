// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stochcert/certify/certificate.hpp"
#include "stochcert/sim/binomial.hpp"

namespace stochcert::sim {

using model::Network;
using poly::Polynomial;

/// controllers[i][p][j]: input j of subsystem i in mode p, a polynomial of
/// the subsystem state.
using Controllers = std::vector<std::vector<std::vector<Polynomial>>>;

/// Controllers carried by per-subsystem certificates.
Controllers controllers_from(const std::vector<certify::StorageCertificate>& certs);

enum class InitPolicy { uniform_x0, fixed };

struct SimConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    std::size_t horizon = 100;
    InitPolicy init = InitPolicy::uniform_x0;
    /// Stacked network state for InitPolicy::fixed.
    std::vector<double> fixed_state;
    /// Initial mode of every chain; by default drawn from the stationary law.
    std::optional<std::size_t> initial_mode;
    std::optional<model::ModeCoupling> coupling;
    bool clamp = true;
    /// Record modes and states of these subsystems (all when empty).
    bool record = false;
    std::vector<std::size_t> tracked;
    unsigned threads = 1;
};

struct Trace {
    std::size_t subsystem = 0;
    /// Per step k = 0..T.
    std::vector<std::size_t> modes;
    std::vector<std::vector<double>> states;
};

struct TrialResult {
    /// Some subsystem was in its unsafe set, or left X, at some k <= T.
    bool unsafe = false;
    std::optional<std::size_t> first_violation;
    std::size_t clamp_events = 0;
    std::vector<Trace> traces;
};

struct SimSummary {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double p_hat = 0.0;
    ConfidenceInterval ci;
    std::size_t clamp_events = 0;
    /// Mode coupling actually used.
    model::ModeCoupling coupling = model::ModeCoupling::independent;
};

struct SimResult {
    std::vector<TrialResult> trials;
    SimSummary summary;
};

/// Runs cfg.trials independent closed-loop trials. Trial t draws from
/// Xoshiro256(child_seed(cfg.seed, t)), so results do not depend on
/// cfg.threads. Throws std::invalid_argument when a controller is missing
/// for some subsystem mode or the configuration is invalid.
SimResult simulate(const Network& net, const Controllers& controllers, const SimConfig& cfg);

/// simulate without trajectory recording.
SimSummary estimate_violation(const Network& net, const Controllers& controllers, SimConfig cfg);

/// CSV with '#' header lines (one per manifest entry), then
/// trial,step,subsystem,mode,x1..xn with n the largest tracked state
/// dimension. Throws std::invalid_argument when recording was disabled.
std::string trajectories_csv(const SimResult& result, const std::vector<std::string>& header_lines = {});

}  // namespace stochcert::sim
