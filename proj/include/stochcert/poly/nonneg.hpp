// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stochcert/poly/interval.hpp"

namespace stochcert::poly {

struct ProofBudget {
    std::uint64_t max_leaves = 1'000'000;
    /// Smallest box width, relative to the initial width of each dimension.
    double min_rel_width = 1e-6;
};

enum class Verdict { proved, counterexample, unknown };

const char* verdict_name(Verdict v);

struct NonnegOutcome {
    Verdict verdict = Verdict::unknown;
    /// Proved: smallest leaf lower bound. Unknown: best lower bound among the
    /// unresolved leaves. Counterexample: value at the point.
    double bound = 0.0;
    /// Full-space point (zeros in coordinates the region does not cover).
    std::vector<double> point;
    double value = 0.0;
    double remaining_volume = 0.0;
    std::uint64_t leaves = 0;
    /// Lowest sampled value seen during the search and where.
    double min_sampled = 0.0;
    std::vector<double> min_sampled_point;
};

/// Branch and bound on interval enclosures: bisects the widest dimension
/// (relative to the starting box) until every leaf has lower bound >= -tol,
/// a sampled point evaluates below -tol, or the budget runs out. Union
/// members are handled independently; the first member counterexample wins.
NonnegOutcome prove_nonneg(const Polynomial& p, const Region& region, double tol = 1e-6,
                           const ProofBudget& budget = {});

}  // namespace stochcert::poly
