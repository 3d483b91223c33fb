// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stochcert/certify/verify.hpp"
#include "stochcert/synth/simplex.hpp"
#include "stochcert/synth/template.hpp"

namespace stochcert::synth {

using certify::Condition;
using certify::StorageCertificate;
using certify::VerificationReport;

/// Full-space sample points per condition; each point constrains every mode.
struct SampleSet {
    std::vector<std::vector<double>> init, unsafe, nonneg, drift;

    std::size_t size() const { return init.size() + unsafe.size() + nonneg.size() + drift.size(); }
    std::vector<std::vector<double>>& of(Condition c);
    /// Region corners plus `per_region` seeded interior points per region.
    static SampleSet initial(const Subsystem& sub, std::size_t per_region, std::uint64_t seed);
};

struct SynthOptions {
    /// Required lambda_p - gamma_p.
    double gap = 1e-2;
    /// Target relative margin: each sampled residual must reach
    /// margin * (1 + sum |row coefficients|) before the gap is maximized.
    double margin = 1e-3;
    /// Weight of the margin variable in the LP objective.
    double margin_weight = 1e4;
    double psi_weight = 1.0;
    std::size_t samples_per_region = 64;
    std::uint64_t seed = 1;
    /// Fresh samples per residual used to screen a candidate before proving.
    std::size_t screen_samples = 4096;
    /// Worst screened violations added per residual and round.
    std::size_t points_per_round = 16;
    std::size_t max_rounds = 40;
    std::size_t controller_sweeps = 2;
    std::size_t golden_iterations = 12;
    /// Start point of the controller search; defaults to ControllerParams::initial.
    std::optional<ControllerParams> initial_controller;
    /// Keep the initial controller fixed.
    bool fixed_controller = false;
    certify::VerifyOptions verify{};
    /// Wall-clock budget in seconds, 0 for none.
    double time_limit = 0.0;
};

struct CounterexampleRecord {
    std::size_t round = 0;
    std::size_t mode = 0;
    Condition condition = Condition::init;
    std::vector<double> point;
    double value = 0.0;
    /// "screen" (sampling) or "prover" (branch and bound).
    std::string source;
};

struct SynthesisResult {
    bool proved = false;
    std::optional<StorageCertificate> certificate;
    /// Report of the returned certificate, or of the last candidate tried.
    VerificationReport report;
    /// Last candidate sent to the prover; equals `certificate` on success.
    std::optional<StorageCertificate> last_candidate;
    double kappa = 0.0;
    std::size_t supply_index = 0;
    ControllerParams controller;
    std::size_t rounds = 0;
    std::size_t lp_solves = 0;
    /// Best relative margin reached by any LP.
    double best_margin = -kInf;
    std::vector<CounterexampleRecord> history;
    std::vector<std::string> diagnostics;
};

/// LP over certificate coefficients, gamma_p, lambda_p, psi_p and a margin t
/// for fixed kappa, supply matrix and controllers. Rows: sampled conditions
/// (residual >= t * weight), lambda_p - gamma_p >= gap, t <= margin.
/// Objective: margin_weight * t + sum_p (lambda_p - gamma_p - psi_weight psi_p).
struct CandidateLp {
    LinearProgram lp;
    std::size_t basis_size = 0;
    std::size_t modes = 0;
    std::size_t coeff(std::size_t p, std::size_t j) const { return p * basis_size + j; }
    std::size_t gamma(std::size_t p) const { return modes * basis_size + 3 * p; }
    std::size_t lambda(std::size_t p) const { return gamma(p) + 1; }
    std::size_t psi(std::size_t p) const { return gamma(p) + 2; }
    std::size_t margin() const { return modes * (basis_size + 3); }
};

CandidateLp build_candidate_lp(const Subsystem& sub, const Template& tmpl, double kappa, const SupplyMatrix& X,
                               const ControllerParams& ctrl, const SampleSet& samples, const SynthOptions& opt);

StorageCertificate decode_candidate(const Subsystem& sub, const Template& tmpl, const CandidateLp& clp,
                                    const LpResult& res, double kappa, const SupplyMatrix& X,
                                    const ControllerParams& ctrl);

/// CEGIS search over (kappa ascending, supply candidate order); the first
/// proved candidate wins. A returned certificate always carries an
/// all-proved report.
SynthesisResult synthesize_csc(const Subsystem& sub, const Template& tmpl, const SynthOptions& opt = {});

}  // namespace stochcert::synth
