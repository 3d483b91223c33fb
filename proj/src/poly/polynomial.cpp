// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/poly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stochcert::poly {

Polynomial::Polynomial(VarSpacePtr space) : space_(std::move(space)) {
    if (!space_) {
        throw std::invalid_argument("polynomial needs a variable space");
    }
}

Polynomial::Polynomial(VarSpacePtr space, Terms terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
    if (!space_) {
        throw std::invalid_argument("polynomial needs a variable space");
    }
    for (const auto& [e, c] : terms_) {
        if (e.size() != space_->size()) {
            throw DimensionError("exponent vector length does not match variable space");
        }
        if (!std::isfinite(c)) {
            throw std::invalid_argument("non-finite polynomial coefficient");
        }
    }
    normalize();
}

Polynomial Polynomial::constant(VarSpacePtr space, double c) {
    Exponents zero(space->size(), 0);
    Terms t;
    t.emplace(std::move(zero), c);
    return Polynomial(std::move(space), std::move(t));
}

Polynomial Polynomial::variable(VarSpacePtr space, std::size_t index) {
    if (index >= space->size()) {
        throw DimensionError("variable index out of range");
    }
    Exponents e(space->size(), 0);
    e[index] = 1;
    return monomial(std::move(space), std::move(e), 1.0);
}

Polynomial Polynomial::variable(VarSpacePtr space, std::string_view name) {
    const auto i = space->index_of(name);
    return variable(std::move(space), i);
}

Polynomial Polynomial::monomial(VarSpacePtr space, Exponents exps, double coeff) {
    Terms t;
    t.emplace(std::move(exps), coeff);
    return Polynomial(std::move(space), std::move(t));
}

void Polynomial::normalize() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kDropThreshold; });
}

void Polynomial::require_same_space(const Polynomial& q, const char* op) const {
    if (!same_space(space_, q.space_)) {
        throw DimensionError(std::string("variable space mismatch in ") + op);
    }
}

double Polynomial::coefficient(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::constant_term() const {
    return coefficient(Exponents(space_->size(), 0));
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    }
    return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, e.at(var));
    }
    return d;
}

unsigned Polynomial::degree_in(std::span<const std::size_t> vars) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (auto v : vars) {
            s += e.at(v);
        }
        d = std::max(d, s);
    }
    return d;
}

bool Polynomial::depends_on(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [var](const auto& kv) { return kv.first.at(var) != 0; });
}

std::vector<std::size_t> Polynomial::free_variables() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < space_->size(); ++v) {
        if (depends_on(v)) {
            out.push_back(v);
        }
    }
    return out;
}

double Polynomial::eval(std::span<const double> point) const {
    if (point.size() != space_->size()) {
        throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                             " coordinates, space has " + std::to_string(space_->size()));
    }
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                t *= point[i];
            }
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::operator+(const Polynomial& q) const {
    require_same_space(q, "add");
    Terms t = terms_;
    for (const auto& [e, c] : q.terms_) {
        t[e] += c;
    }
    return Polynomial(space_, std::move(t));
}

Polynomial Polynomial::operator-(const Polynomial& q) const {
    require_same_space(q, "subtract");
    Terms t = terms_;
    for (const auto& [e, c] : q.terms_) {
        t[e] -= c;
    }
    return Polynomial(space_, std::move(t));
}

Polynomial Polynomial::operator-() const { return scale(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& q) const {
    require_same_space(q, "multiply");
    Terms t;
    Exponents e(space_->size());
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : q.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = e1[i] + e2[i];
            }
            t[e] += c1 * c2;
        }
    }
    return Polynomial(space_, std::move(t));
}

Polynomial Polynomial::scale(double c) const {
    Terms t;
    if (c != 0.0) {
        for (const auto& [e, v] : terms_) {
            t.emplace(e, v * c);
        }
    }
    return Polynomial(space_, std::move(t));
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(space_, 1.0);
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1u) {
            result = result * base;
        }
        k >>= 1u;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

Polynomial Polynomial::add_constant(double c) const {
    return *this + constant(space_, c);
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Polynomial>& bindings,
                                  const VarSpacePtr& target) const {
    const std::size_t n = space_->size();
    std::vector<const Polynomial*> bound(n, nullptr);
    for (const auto& [v, q] : bindings) {
        if (v >= n) {
            throw DimensionError("binding for variable index " + std::to_string(v) +
                                 " outside the source space");
        }
        if (!same_space(q.space(), target)) {
            throw DimensionError("substituted polynomial for '" + space_->var(v).name +
                                 "' is not over the target space");
        }
        bound[v] = &q;
    }
    // Unbound variables map to the same-named target variable.
    std::vector<std::size_t> carried(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (bound[v] == nullptr && depends_on(v)) {
            auto idx = target->find(space_->var(v).name);
            if (!idx) {
                throw DimensionError("unbound variable '" + space_->var(v).name +
                                     "' has no counterpart in the target space");
            }
            carried[v] = *idx;
        }
    }

    // Powers of each binding are cached across terms.
    std::vector<std::vector<Polynomial>> powers(n);
    auto power_of = [&](std::size_t v, unsigned k) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty()) {
            cache.push_back(constant(target, 1.0));
        }
        while (cache.size() <= k) {
            cache.push_back(cache.back() * *bound[v]);
        }
        return cache[k];
    };

    Terms acc;
    for (const auto& [e, c] : terms_) {
        Exponents carried_exp(target->size(), 0);
        Polynomial factor = constant(target, c);
        for (std::size_t v = 0; v < n; ++v) {
            if (e[v] == 0) {
                continue;
            }
            if (bound[v] != nullptr) {
                factor = factor * power_of(v, e[v]);
            } else {
                carried_exp[carried[v]] += e[v];
            }
        }
        for (const auto& [fe, fc] : factor.terms()) {
            Exponents sum = fe;
            for (std::size_t i = 0; i < sum.size(); ++i) {
                sum[i] += carried_exp[i];
            }
            acc[sum] += fc;
        }
    }
    return Polynomial(target, std::move(acc));
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Polynomial>& bindings) const {
    return substitute(bindings, space_);
}

Polynomial Polynomial::rebase(const VarSpacePtr& target) const {
    if (same_space(space_, target)) {
        return Polynomial(target, terms_);
    }
    return substitute({}, target);
}

bool Polynomial::approx_equal(const Polynomial& q, double tol) const {
    if (!same_space(space_, q.space_)) {
        return false;
    }
    Terms diff = terms_;
    for (const auto& [e, c] : q.terms_) {
        diff[e] -= c;
    }
    return std::all_of(diff.begin(), diff.end(),
                       [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

bool Polynomial::operator==(const Polynomial& q) const {
    return same_space(space_, q.space_) && terms_ == q.terms_;
}

double standard_normal_moment(unsigned k) {
    if (k % 2 == 1) {
        return 0.0;
    }
    double m = 1.0;
    for (unsigned j = k; j > 1; j -= 2) {
        m *= static_cast<double>(j - 1);
    }
    return m;
}

Polynomial gaussian_expectation(const Polynomial& p, std::span<const std::size_t> noise_vars) {
    const auto& space = *p.space();
    for (auto v : noise_vars) {
        if (v >= space.size() || space.var(v).role != VarRole::noise) {
            throw std::invalid_argument("expectation requested over non-noise variable" +
                                        (v < space.size() ? " '" + space.var(v).name + "'"
                                                          : std::string()));
        }
    }
    Polynomial::Terms out;
    for (const auto& [e, c] : p.terms()) {
        double coeff = c;
        Exponents reduced = e;
        for (auto v : noise_vars) {
            coeff *= standard_normal_moment(e[v]);
            reduced[v] = 0;
        }
        if (coeff != 0.0) {
            out[reduced] += coeff;
        }
    }
    return Polynomial(p.space(), std::move(out));
}

Polynomial gaussian_expectation(const Polynomial& p) {
    const auto noise = p.space()->indices_with_role(VarRole::noise);
    return gaussian_expectation(p, noise);
}

std::vector<Exponents> monomials_up_to(std::size_t dim, std::span<const std::size_t> vars,
                                       unsigned max_degree) {
    std::vector<Exponents> out;
    for (unsigned d = 0; d <= max_degree; ++d) {
        // Enumerate compositions of d over vars in lexicographic order.
        std::vector<unsigned> cur(vars.size(), 0);
        auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
            if (pos + 1 == vars.size()) {
                cur[pos] = left;
                Exponents e(dim, 0);
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    e[vars[i]] = cur[i];
                }
                out.push_back(std::move(e));
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                cur[pos] = k;
                self(self, pos + 1, left - k);
            }
        };
        if (vars.empty()) {
            if (d == 0) {
                out.emplace_back(dim, 0);
            }
            continue;
        }
        rec(rec, 0, d);
    }
    return out;
}

}  // namespace stochcert::poly
