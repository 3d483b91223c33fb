// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochcert/poly/polynomial.hpp"

namespace stochcert::poly {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool operator==(const Interval&) const = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(double c, const Interval& a);
Interval ipow(const Interval& a, unsigned k);

/// Axis-aligned box over a subset of a space's variables.
struct Box {
    std::vector<std::size_t> vars;
    std::vector<Interval> bounds;

    Box() = default;
    Box(std::vector<std::size_t> vars, std::vector<Interval> bounds);

    std::size_t dim() const { return vars.size(); }
    double volume() const;
    bool contains_point(std::span<const double> full_point) const;
    /// Bound for `var`, or nullptr when the box does not cover it.
    const Interval* find(std::size_t var) const;
    /// Cartesian product over disjoint variable sets.
    Box product(const Box& other) const;
};

/// Finite union of boxes that share one variable subset.
struct Region {
    std::vector<Box> boxes;

    Region() = default;
    explicit Region(Box b) : boxes{std::move(b)} {}
    explicit Region(std::vector<Box> bs);

    bool empty() const { return boxes.empty(); }
    bool contains_point(std::span<const double> full_point) const;
    /// Pairwise products of member boxes.
    Region product(const Region& other) const;
};

/// Polynomial flattened against a fixed variable list for fast repeated
/// evaluation and interval bounding.
class CompiledPoly {
public:
    CompiledPoly(const Polynomial& p, std::span<const std::size_t> vars);

    std::size_t dim() const { return vars_.size(); }
    const std::vector<std::size_t>& vars() const { return vars_; }
    double eval_local(std::span<const double> local) const;
    /// Sound enclosure of the range over the local box. Floating-point error
    /// of the endpoint arithmetic is absorbed by an a-priori widening.
    /// Takes the tighter of the natural extension and a centred expansion.
    Interval bound(std::span<const Interval> local) const;

private:
    static constexpr std::size_t kMaxDense = 4096;
    Interval natural_bound(std::span<const Interval> local) const;
    Interval centred_bound(std::span<const Interval> local) const;

    std::vector<std::size_t> vars_;
    std::vector<unsigned> max_deg_;
    std::vector<double> coeffs_;
    std::vector<std::uint32_t> exps_;  // term-major, dim() entries per term
    unsigned total_max_degree_ = 0;
    std::vector<std::size_t> stride_;
    std::size_t dense_size_ = 0;  // 0: centred expansion disabled
};

/// Enclosure of p over box. Throws DimensionError when the box leaves a free
/// variable of p uncovered.
Interval interval_bound(const Polynomial& p, const Box& box);

}  // namespace stochcert::poly
