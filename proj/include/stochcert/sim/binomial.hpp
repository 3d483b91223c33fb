// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace stochcert::sim {

/// P(X <= k) for X ~ Binomial(n, p), summed in log space.
double binomial_cdf(std::size_t k, std::size_t n, double p);

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Exact (Clopper-Pearson) two-sided interval at level 1 - alpha, found by
/// bisection on the binomial CDF. Throws std::invalid_argument for k > n,
/// n == 0 or alpha outside (0, 1).
ConfidenceInterval clopper_pearson(std::size_t k, std::size_t n, double alpha = 0.05);

}  // namespace stochcert::sim
