// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stochcert/certify/certificate.hpp"

namespace stochcert::certify {

/// Closed-loop dynamics of mode p: f_p with the mode's controller substituted.
std::vector<Polynomial> closed_loop(const Subsystem& sub, const StorageCertificate& csc, std::size_t p);

/// sum_p' pi(p,p') E[B_p'(f_p^cl)] as a polynomial over (x, w).
Polynomial expected_next_value(const Subsystem& sub, const StorageCertificate& csc, std::size_t p);

/// A polynomial that must be nonnegative on `region`.
struct Residual {
    std::size_t mode = 0;
    Condition condition = Condition::init;
    Polynomial poly;
    poly::Region region;
};

/// init: gamma - B on X0; unsafe: B - lambda on Xu; nonneg: B on X;
/// drift: kappa B + psi + s(w, h(x)) - E[next] on X x W.
std::vector<Residual> csc_residuals(const Subsystem& sub, const StorageCertificate& csc, std::size_t p);

inline const std::vector<Condition> kAllConditions{Condition::init, Condition::unsafe, Condition::nonneg,
                                                   Condition::drift};

struct VerifyOptions {
    double tol = 1e-6;
    poly::ProofBudget budget{};
    std::vector<Condition> conditions = kAllConditions;
    unsigned threads = 1;
};

VerificationReport verify_csc(const Subsystem& sub, const StorageCertificate& csc, const VerifyOptions& opt = {});

struct SampleMin {
    std::size_t mode = 0;
    Condition condition = Condition::init;
    double min_value = 0.0;
    std::vector<double> point;
    std::size_t samples = 0;
};

struct FalsifyResult {
    /// Lowest sampled value per (mode, condition).
    std::vector<SampleMin> minima;
    /// Worst point among residuals that drop below -tol.
    std::optional<SampleMin> counterexample;
};

/// Deterministic sample set over a region: corners of every box, then
/// uniform points split across boxes by volume, a quarter of them snapped to
/// a face. Full-space points.
std::vector<std::vector<double>> sample_region(const poly::Region& region, std::size_t space_dim,
                                               std::size_t count, std::uint64_t seed);

FalsifyResult falsify(const Subsystem& sub, const StorageCertificate& csc, std::size_t sample_count,
                      std::uint64_t seed, double tol = 1e-6,
                      const std::vector<Condition>& conditions = kAllConditions);

/// Checks the barrier conditions on the interconnected closed loop with w
/// eliminated through M. init/unsafe/nonneg/drift as for a single subsystem,
/// with unsafe meaning every subsystem in its unsafe set.
VerificationReport verify_cbc_direct(const Network& net, const NetworkCertificate& cert, double tol = 1e-6,
                                     const poly::ProofBudget& budget = {});

inline constexpr std::size_t kDirectMaxStates = 4;
inline constexpr std::size_t kDirectMaxModes = 16;

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn);

}  // namespace stochcert::certify

#include "stochcert/certify/parallel.hpp"
