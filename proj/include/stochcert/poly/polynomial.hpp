// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stochcert/poly/varspace.hpp"

namespace stochcert::poly {

/// Raised when operands live in different variable spaces or a point has
/// the wrong length.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Exponents = std::vector<std::uint32_t>;

/// Entries with magnitude below this are dropped on normalization.
inline constexpr double kDropThreshold = 1e-15;

/// Sparse multivariate polynomial with double coefficients.
///
/// Values are immutable once built; every arithmetic operation returns a
/// fresh normalized polynomial, so instances can be shared across threads.
class Polynomial {
public:
    using Terms = std::map<Exponents, double>;

    explicit Polynomial(VarSpacePtr space);
    Polynomial(VarSpacePtr space, Terms terms);

    static Polynomial constant(VarSpacePtr space, double c);
    static Polynomial variable(VarSpacePtr space, std::size_t index);
    static Polynomial variable(VarSpacePtr space, std::string_view name);
    static Polynomial monomial(VarSpacePtr space, Exponents exps, double coeff = 1.0);

    /// Parses the `coeff * var^e * ...` text form.
    static Polynomial parse(VarSpacePtr space, std::string_view text);
    std::string to_string() const;

    const VarSpacePtr& space() const { return space_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    double coefficient(const Exponents& exps) const;
    double constant_term() const;

    unsigned degree() const;
    unsigned degree_in(std::size_t var) const;
    unsigned degree_in(std::span<const std::size_t> vars) const;
    bool depends_on(std::size_t var) const;
    /// Indices of variables with a nonzero exponent somewhere.
    std::vector<std::size_t> free_variables() const;

    double eval(std::span<const double> point) const;

    Polynomial operator+(const Polynomial& q) const;
    Polynomial operator-(const Polynomial& q) const;
    Polynomial operator*(const Polynomial& q) const;
    Polynomial operator-() const;
    Polynomial scale(double c) const;
    Polynomial pow(unsigned k) const;
    Polynomial add_constant(double c) const;

    /// Replaces each bound variable by a polynomial over `target`. Unbound
    /// variables are carried over by name and must exist in `target`.
    Polynomial substitute(const std::map<std::size_t, Polynomial>& bindings,
                          const VarSpacePtr& target) const;
    /// Same-space substitution.
    Polynomial substitute(const std::map<std::size_t, Polynomial>& bindings) const;

    /// Re-expresses the polynomial over another space with matching names.
    Polynomial rebase(const VarSpacePtr& target) const;

    /// Coefficient-wise comparison after normalization.
    bool approx_equal(const Polynomial& q, double tol) const;
    bool operator==(const Polynomial& q) const;

private:
    void normalize();
    void require_same_space(const Polynomial& q, const char* op) const;

    VarSpacePtr space_;
    Terms terms_;
};

inline Polynomial operator*(double c, const Polynomial& p) { return p.scale(c); }

/// Expectation over i.i.d. standard normal noise variables: each factor
/// sigma^k becomes 0 for odd k and (k-1)!! for even k. The result stays in
/// the same space with the listed noise variables eliminated.
Polynomial gaussian_expectation(const Polynomial& p, std::span<const std::size_t> noise_vars);
/// All variables tagged `noise` in the polynomial's space.
Polynomial gaussian_expectation(const Polynomial& p);

/// E[Z^k] for Z ~ N(0,1).
double standard_normal_moment(unsigned k);

/// All exponent vectors over `vars` (inside a space of `dim` variables)
/// with total degree <= `max_degree`, graded then lexicographic.
std::vector<Exponents> monomials_up_to(std::size_t dim, std::span<const std::size_t> vars,
                                       unsigned max_degree);

}  // namespace stochcert::poly
