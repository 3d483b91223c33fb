// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stochcert/solver_failure.hpp"

namespace stochcert::synth {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// maximize c^T x  subject to  rows: a^T x <= rhs,  lower <= x <= upper.
struct LinearProgram {
    struct Row {
        std::vector<std::pair<std::size_t, double>> coeffs;
        double rhs = 0.0;
    };

    std::vector<std::string> labels;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    std::size_t add_var(std::string label, double lo = -kInf, double hi = kInf, double cost = 0.0);
    std::size_t vars() const { return labels.size(); }
    void add_le(std::vector<std::pair<std::size_t, double>> coeffs, double rhs);
    void add_ge(std::vector<std::pair<std::size_t, double>> coeffs, double rhs);
    /// Throws std::invalid_argument on non-finite data or unknown indices.
    void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* lp_status_name(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
};

/// Two-phase revised simplex on the dual  min b^T y, A^T y = c, y >= 0,
/// whose basis has one column per primal variable. Pricing is Dantzig's
/// rule, switching to Bland's rule after a run of degenerate pivots. The
/// primal point is recovered from the optimal basis and checked against
/// every row to 1e-8 relative. Throws SolverFailure on a singular basis or
/// a failed check.
LpResult lp_solve(const LinearProgram& lp);

}  // namespace stochcert::synth
