// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace stochcert::bound {

struct BoundInput {
    double gamma = 0.0;
    double lambda = 1.0;
    double kappa = 0.5;
    double psi = 0.0;
    std::uint64_t horizon = 0;
};

struct BoundResult {
    /// Violation probability bound, clamped to [0, 1].
    double delta = 0.0;
    /// Formula value before clamping.
    double raw = 0.0;
    /// 1 when lambda >= psi / (1 - kappa), else 2.
    int branch = 1;
};

/// Finite-horizon bound on the probability of reaching the unsafe set:
///   branch 1: 1 - (1 - gamma/lambda) (1 - psi/lambda)^T
///   branch 2: (gamma/lambda) kappa^T + psi/((1-kappa) lambda) (1 - kappa^T)
/// Throws std::invalid_argument unless 0 <= gamma < lambda, 0 < kappa < 1
/// and psi >= 0.
BoundResult safety_bound(const BoundInput& in);

}  // namespace stochcert::bound
