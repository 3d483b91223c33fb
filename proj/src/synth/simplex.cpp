// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/synth/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochcert::synth {

std::size_t LinearProgram::add_var(std::string label, double lo, double hi, double cost) {
    labels.push_back(std::move(label));
    lower.push_back(lo);
    upper.push_back(hi);
    objective.push_back(cost);
    return labels.size() - 1;
}

void LinearProgram::add_le(std::vector<std::pair<std::size_t, double>> coeffs, double rhs) {
    rows.push_back({std::move(coeffs), rhs});
}

void LinearProgram::add_ge(std::vector<std::pair<std::size_t, double>> coeffs, double rhs) {
    for (auto& [j, a] : coeffs) {
        a = -a;
    }
    rows.push_back({std::move(coeffs), -rhs});
}

void LinearProgram::validate() const {
    const std::size_t n = vars();
    if (objective.size() != n || lower.size() != n || upper.size() != n) {
        throw std::invalid_argument("LP variable arrays have inconsistent lengths");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(objective[j]) || std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
            lower[j] == kInf || upper[j] == -kInf) {
            throw std::invalid_argument("LP variable '" + labels[j] + "' has invalid bounds or cost");
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!std::isfinite(rows[i].rhs)) {
            throw std::invalid_argument("LP row " + std::to_string(i) + " has a non-finite right-hand side");
        }
        for (const auto& [j, a] : rows[i].coeffs) {
            if (j >= n) {
                throw std::invalid_argument("LP row " + std::to_string(i) + " references unknown variable");
            }
            if (!std::isfinite(a)) {
                throw std::invalid_argument("LP row " + std::to_string(i) + " has a non-finite coefficient");
            }
        }
    }
}

const char* lp_status_name(LpStatus s) {
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kDegenerateRun = 50;

using SparseRow = std::vector<std::pair<std::size_t, double>>;

/// Dense LU with partial pivoting of the n x n basis.
class Lu {
public:
    void factor(std::vector<double> a, std::size_t n) {
        n_ = n;
        a_ = std::move(a);
        perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            perm_[i] = i;
        }
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            for (std::size_t r = k + 1; r < n; ++r) {
                if (std::abs(a_[r * n + k]) > std::abs(a_[piv * n + k])) {
                    piv = r;
                }
            }
            if (std::abs(a_[piv * n + k]) < 1e-11) {
                throw SolverFailure("numerically singular simplex basis");
            }
            if (piv != k) {
                for (std::size_t c = 0; c < n; ++c) {
                    std::swap(a_[k * n + c], a_[piv * n + c]);
                }
                std::swap(perm_[k], perm_[piv]);
            }
            for (std::size_t r = k + 1; r < n; ++r) {
                const double f = a_[r * n + k] / a_[k * n + k];
                a_[r * n + k] = f;
                for (std::size_t c = k + 1; c < n; ++c) {
                    a_[r * n + c] -= f * a_[k * n + c];
                }
            }
        }
    }

    /// Solves B z = b.
    std::vector<double> solve(const std::vector<double>& b) const {
        const std::size_t n = n_;
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = b[perm_[i]];
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                z[i] -= a_[i * n + k] * z[k];
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k) {
                z[i] -= a_[i * n + k] * z[k];
            }
            z[i] /= a_[i * n + i];
        }
        return z;
    }

    /// Solves B^T z = b.
    std::vector<double> solve_transpose(const std::vector<double>& b) const {
        const std::size_t n = n_;
        std::vector<double> z(b);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                z[i] -= a_[k * n + i] * z[k];
            }
            z[i] /= a_[i * n + i];
        }
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k) {
                z[i] -= a_[k * n + i] * z[k];
            }
        }
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[perm_[i]] = z[i];
        }
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
    std::vector<std::size_t> perm_;
};

/// Standard-form dual  min cost^T y, sum_j col_j y_j = rhs, y >= 0, with
/// columns [structural | artificial identity].
class DualSimplex {
public:
    DualSimplex(std::size_t n, std::vector<SparseRow> cols, std::vector<double> rhs)
        : n_(n), m_(cols.size()), cols_(std::move(cols)), rhs_(std::move(rhs)) {
        basis_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            basis_[k] = m_ + k;
        }
        is_basic_.assign(m_ + n_, false);
        for (auto b : basis_) {
            is_basic_[b] = true;
        }
    }

    enum class Outcome { optimal, unbounded };

    Outcome run(const std::vector<double>& cost, bool allow_artificial_entry, std::size_t& iters,
                std::size_t max_iters) {
        int degenerate = 0;
        while (true) {
            refactor();
            const auto xb = lu_.solve(rhs_);
            xb_ = xb;
            std::vector<double> cb(n_);
            for (std::size_t k = 0; k < n_; ++k) {
                cb[k] = cost[basis_[k]];
            }
            pi_ = lu_.solve_transpose(cb);

            const bool bland = degenerate >= kDegenerateRun;
            std::size_t enter = npos;
            double best = -kCostTol;
            const std::size_t limit = allow_artificial_entry ? m_ + n_ : m_;
            for (std::size_t j = 0; j < limit; ++j) {
                if (is_basic_[j]) {
                    continue;
                }
                const double d = cost[j] - dot_col(j, pi_);
                if (d < -kCostTol) {
                    if (bland) {
                        enter = j;
                        break;
                    }
                    if (d < best) {
                        best = d;
                        enter = j;
                    }
                }
            }
            if (enter == npos) {
                return Outcome::optimal;
            }
            if (++iters > max_iters) {
                throw SolverFailure("simplex iteration limit reached");
            }
            const auto u = lu_.solve(dense_col(enter));
            std::size_t leave = npos;
            double theta = kInf;
            for (std::size_t k = 0; k < n_; ++k) {
                if (u[k] <= kPivotTol) {
                    continue;
                }
                const double r = std::max(xb[k], 0.0) / u[k];
                if (leave == npos) {
                    leave = k;
                    theta = r;
                    continue;
                }
                const double slack = 1e-12 * std::max(1.0, theta);
                const bool better = r < theta - slack ||
                                    (r <= theta + slack && (bland ? basis_[k] < basis_[leave] : u[k] > u[leave]));
                if (better) {
                    leave = k;
                    theta = r;
                }
            }
            if (leave == npos) {
                return Outcome::unbounded;
            }
            degenerate = theta <= 1e-12 ? degenerate + 1 : 0;
            is_basic_[basis_[leave]] = false;
            basis_[leave] = enter;
            is_basic_[enter] = true;
        }
    }

    /// Pivots zero-level artificials out of the basis where some structural
    /// column has a nonzero entry in their row; the rest mark redundant rows.
    void drive_out_artificials() {
        for (std::size_t k = 0; k < n_; ++k) {
            if (basis_[k] < m_) {
                continue;
            }
            refactor();
            std::vector<double> e(n_, 0.0);
            e[k] = 1.0;
            const auto rho = lu_.solve_transpose(e);
            std::size_t best = npos;
            double mag = 1e-7;
            for (std::size_t j = 0; j < m_; ++j) {
                if (is_basic_[j]) {
                    continue;
                }
                const double v = std::abs(dot_col(j, rho));
                if (v > mag) {
                    mag = v;
                    best = j;
                }
            }
            if (best != npos) {
                is_basic_[basis_[k]] = false;
                basis_[k] = best;
                is_basic_[best] = true;
            }
        }
    }

    double objective(const std::vector<double>& cost) const {
        double s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            s += cost[basis_[k]] * xb_[k];
        }
        return s;
    }

    const std::vector<double>& prices() const { return pi_; }

    void refresh_prices(const std::vector<double>& cost) {
        refactor();
        xb_ = lu_.solve(rhs_);
        std::vector<double> cb(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            cb[k] = cost[basis_[k]];
        }
        pi_ = lu_.solve_transpose(cb);
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    double dot_col(std::size_t j, const std::vector<double>& v) const {
        if (j >= m_) {
            return v[j - m_];
        }
        double s = 0.0;
        for (const auto& [k, a] : cols_[j]) {
            s += a * v[k];
        }
        return s;
    }

    std::vector<double> dense_col(std::size_t j) const {
        std::vector<double> c(n_, 0.0);
        if (j >= m_) {
            c[j - m_] = 1.0;
        } else {
            for (const auto& [k, a] : cols_[j]) {
                c[k] = a;
            }
        }
        return c;
    }

    void refactor() {
        std::vector<double> b(n_ * n_, 0.0);
        for (std::size_t k = 0; k < n_; ++k) {
            const auto c = dense_col(basis_[k]);
            for (std::size_t r = 0; r < n_; ++r) {
                b[r * n_ + k] = c[r];
            }
        }
        lu_.factor(std::move(b), n_);
    }

    std::size_t n_, m_;
    std::vector<SparseRow> cols_;
    std::vector<double> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<bool> is_basic_;
    std::vector<double> xb_, pi_;
    Lu lu_;
};

struct Scaled {
    std::vector<SparseRow> rows;
    std::vector<double> b;
    std::vector<double> col_scale;
};

/// Turns bounds into rows and equilibrates rows, then columns.
Scaled build_rows(const LinearProgram& lp) {
    const std::size_t n = lp.vars();
    Scaled s;
    for (const auto& r : lp.rows) {
        SparseRow row;
        for (const auto& [j, a] : r.coeffs) {
            if (a != 0.0) {
                row.emplace_back(j, a);
            }
        }
        std::sort(row.begin(), row.end());
        SparseRow merged;
        for (const auto& [j, a] : row) {
            if (!merged.empty() && merged.back().first == j) {
                merged.back().second += a;
            } else {
                merged.emplace_back(j, a);
            }
        }
        s.rows.push_back(std::move(merged));
        s.b.push_back(r.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.upper[j] < kInf) {
            s.rows.push_back({{j, 1.0}});
            s.b.push_back(lp.upper[j]);
        }
        if (lp.lower[j] > -kInf) {
            s.rows.push_back({{j, -1.0}});
            s.b.push_back(-lp.lower[j]);
        }
    }
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        double mx = 0.0;
        for (const auto& [j, a] : s.rows[i]) {
            mx = std::max(mx, std::abs(a));
        }
        if (mx > 0.0) {
            for (auto& [j, a] : s.rows[i]) {
                a /= mx;
            }
            s.b[i] /= mx;
        }
    }
    s.col_scale.assign(n, 0.0);
    for (const auto& row : s.rows) {
        for (const auto& [j, a] : row) {
            s.col_scale[j] = std::max(s.col_scale[j], std::abs(a));
        }
    }
    for (auto& c : s.col_scale) {
        c = c > 0.0 ? 1.0 / c : 1.0;
    }
    for (auto& row : s.rows) {
        for (auto& [j, a] : row) {
            a *= s.col_scale[j];
        }
    }
    return s;
}

enum class DualOutcome { optimal, dual_infeasible, dual_unbounded };

DualOutcome solve_dual(const Scaled& s, const std::vector<double>& c, std::vector<double>& x, std::size_t& iters) {
    const std::size_t n = c.size();
    const std::size_t m = s.rows.size();
    std::vector<double> sign(n), rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
        sign[k] = c[k] < 0.0 ? -1.0 : 1.0;
        rhs[k] = std::abs(c[k]);
    }
    std::vector<SparseRow> cols(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [k, a] : s.rows[i]) {
            cols[i].emplace_back(k, a * sign[k]);
        }
    }
    DualSimplex ds(n, std::move(cols), rhs);
    const std::size_t max_iters = 50 * (m + n) + 1000;

    std::vector<double> phase1(m + n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        phase1[m + k] = 1.0;
    }
    ds.run(phase1, false, iters, max_iters);
    double cnorm = 0.0;
    for (double v : rhs) {
        cnorm = std::max(cnorm, v);
    }
    if (ds.objective(phase1) > 1e-9 * std::max(1.0, cnorm)) {
        return DualOutcome::dual_infeasible;
    }
    ds.drive_out_artificials();

    std::vector<double> phase2(m + n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        phase2[i] = s.b[i];
    }
    if (ds.run(phase2, false, iters, max_iters) == DualSimplex::Outcome::unbounded) {
        return DualOutcome::dual_unbounded;
    }
    ds.refresh_prices(phase2);
    x.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = sign[k] * ds.prices()[k];
    }
    return DualOutcome::optimal;
}

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
    lp.validate();
    const std::size_t n = lp.vars();
    LpResult out;
    if (n == 0) {
        for (const auto& r : lp.rows) {
            if (r.rhs < 0.0) {
                out.status = LpStatus::infeasible;
                return out;
            }
        }
        out.status = LpStatus::optimal;
        return out;
    }
    const Scaled s = build_rows(lp);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        if (s.rows[i].empty() && s.b[i] < -1e-12) {
            out.status = LpStatus::infeasible;
            return out;
        }
    }
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = lp.objective[j] * s.col_scale[j];
    }
    std::vector<double> xs;
    switch (solve_dual(s, c, xs, out.iterations)) {
    case DualOutcome::dual_unbounded:
        out.status = LpStatus::infeasible;
        return out;
    case DualOutcome::dual_infeasible: {
        // Primal is infeasible or unbounded; a zero objective tells which.
        std::vector<double> zero(n, 0.0), xf;
        out.status = solve_dual(s, zero, xf, out.iterations) == DualOutcome::optimal ? LpStatus::unbounded
                                                                                      : LpStatus::infeasible;
        return out;
    }
    case DualOutcome::optimal: break;
    }

    out.status = LpStatus::optimal;
    out.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.x[j] = xs[j] * s.col_scale[j];
    }
    out.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.value += lp.objective[j] * out.x[j];
    }
    auto check = [&](const std::vector<std::pair<std::size_t, double>>& coeffs, double rhs, const std::string& what) {
        double lhs = 0.0, mag = std::abs(rhs);
        for (const auto& [j, a] : coeffs) {
            lhs += a * out.x[j];
            mag += std::abs(a * out.x[j]);
        }
        if (lhs - rhs > 1e-8 * std::max(1.0, mag)) {
            throw SolverFailure("simplex point violates " + what + " by " + std::to_string(lhs - rhs));
        }
    };
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        check(lp.rows[i].coeffs, lp.rows[i].rhs, "row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.upper[j] < kInf) {
            check({{j, 1.0}}, lp.upper[j], "upper bound of " + lp.labels[j]);
        }
        if (lp.lower[j] > -kInf) {
            check({{j, -1.0}}, -lp.lower[j], "lower bound of " + lp.labels[j]);
        }
    }
    return out;
}

}  // namespace stochcert::synth
