// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/poly/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochcert::poly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnit = std::numeric_limits<double>::epsilon() * 0.5;

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

double raw_pow(double x, unsigned k) {
    double r = 1.0;
    for (unsigned i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

// Range of x^k over [lo, hi], endpoint arithmetic only.
inline void pow_range(double lo, double hi, unsigned k, double& out_lo, double& out_hi) {
    if (k == 0) {
        out_lo = out_hi = 1.0;
        return;
    }
    const double a = raw_pow(lo, k);
    const double b = raw_pow(hi, k);
    if (k % 2 == 1 || lo >= 0.0) {
        out_lo = a;
        out_hi = b;
    } else if (hi <= 0.0) {
        out_lo = b;
        out_hi = a;
    } else {
        out_lo = 0.0;
        out_hi = std::max(a, b);
    }
}

inline void mul_range(double a, double b, double c, double d, double& lo, double& hi) {
    const double p1 = a * c, p2 = a * d, p3 = b * c, p4 = b * d;
    lo = std::min(std::min(p1, p2), std::min(p3, p4));
    hi = std::max(std::max(p1, p2), std::max(p3, p4));
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    return {down(a.lo + b.lo), up(a.hi + b.hi)};
}

Interval operator*(const Interval& a, const Interval& b) {
    double lo, hi;
    mul_range(a.lo, a.hi, b.lo, b.hi, lo, hi);
    return {down(lo), up(hi)};
}

Interval operator*(double c, const Interval& a) {
    return Interval{c, c} * a;
}

Interval ipow(const Interval& a, unsigned k) {
    double lo, hi;
    pow_range(a.lo, a.hi, k, lo, hi);
    // k roundings at most; widen by k ulps each side.
    for (unsigned i = 0; i < k; ++i) {
        lo = down(lo);
        hi = up(hi);
    }
    if (k > 0 && k % 2 == 0) {
        lo = std::max(lo, 0.0);
    }
    return {lo, hi};
}

Box::Box(std::vector<std::size_t> v, std::vector<Interval> b) : vars(std::move(v)), bounds(std::move(b)) {
    if (vars.size() != bounds.size()) {
        throw std::invalid_argument("box variable and bound lists differ in length");
    }
    for (const auto& iv : bounds) {
        if (!(iv.lo <= iv.hi)) {
            throw std::invalid_argument("box interval with lo > hi");
        }
    }
}

double Box::volume() const {
    double v = 1.0;
    for (const auto& iv : bounds) {
        v *= iv.width();
    }
    return v;
}

bool Box::contains_point(std::span<const double> full_point) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] >= full_point.size() || !bounds[i].contains(full_point[vars[i]])) {
            return false;
        }
    }
    return true;
}

const Interval* Box::find(std::size_t var) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == var) {
            return &bounds[i];
        }
    }
    return nullptr;
}

Box Box::product(const Box& other) const {
    Box out = *this;
    for (std::size_t i = 0; i < other.vars.size(); ++i) {
        if (find(other.vars[i]) != nullptr) {
            throw std::invalid_argument("box product over overlapping variables");
        }
        out.vars.push_back(other.vars[i]);
        out.bounds.push_back(other.bounds[i]);
    }
    return out;
}

Region::Region(std::vector<Box> bs) : boxes(std::move(bs)) {
    for (std::size_t i = 1; i < boxes.size(); ++i) {
        if (boxes[i].vars != boxes[0].vars) {
            throw std::invalid_argument("region members must share one variable subset");
        }
    }
}

bool Region::contains_point(std::span<const double> full_point) const {
    return std::any_of(boxes.begin(), boxes.end(),
                       [&](const Box& b) { return b.contains_point(full_point); });
}

Region Region::product(const Region& other) const {
    std::vector<Box> out;
    for (const auto& a : boxes) {
        for (const auto& b : other.boxes) {
            out.push_back(a.product(b));
        }
    }
    return Region(std::move(out));
}

CompiledPoly::CompiledPoly(const Polynomial& p, std::span<const std::size_t> vars)
    : vars_(vars.begin(), vars.end()), max_deg_(vars.size(), 0) {
    const auto free = p.free_variables();
    for (auto v : free) {
        if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) {
            throw DimensionError("variable '" + p.space()->var(v).name +
                                 "' is not covered by the box");
        }
    }
    for (const auto& [e, c] : p.terms()) {
        coeffs_.push_back(c);
        unsigned total = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const auto k = e[vars_[i]];
            exps_.push_back(k);
            max_deg_[i] = std::max(max_deg_[i], k);
            total += k;
        }
        total_max_degree_ = std::max(total_max_degree_, total);
    }
    std::size_t size = 1;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        stride_.push_back(size);
        size *= max_deg_[i] + 1;
        if (size > kMaxDense) {
            return;
        }
    }
    dense_size_ = coeffs_.empty() ? 0 : size;
}

double CompiledPoly::eval_local(std::span<const double> local) const {
    const std::size_t d = vars_.size();
    double sum = 0.0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        double v = coeffs_[t];
        const auto* e = &exps_[t * d];
        for (std::size_t i = 0; i < d; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                v *= local[i];
            }
        }
        sum += v;
    }
    return sum;
}

Interval CompiledPoly::bound(std::span<const Interval> local) const {
    Interval out = natural_bound(local);
    if (dense_size_ > 0) {
        const Interval c = centred_bound(local);
        out = {std::max(out.lo, c.lo), std::min(out.hi, c.hi)};
    }
    return out;
}

// Re-expands p around the box midpoint m and bounds each term of
// p(m + h) over |h_i| <= r_i. Much tighter than the natural extension on
// boxes far from the origin.
Interval CompiledPoly::centred_bound(std::span<const Interval> local) const {
    const std::size_t d = vars_.size();
    thread_local std::vector<double> a, s;
    a.assign(dense_size_, 0.0);
    s.assign(dense_size_, 0.0);
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d; ++i) {
            idx += exps_[t * d + i] * stride_[i];
        }
        a[idx] += coeffs_[t];
        s[idx] += std::abs(coeffs_[t]);
    }
    unsigned ops = 0;
    for (std::size_t i = 0; i < d; ++i) {
        const unsigned D = max_deg_[i];
        if (D == 0) {
            continue;
        }
        ops += 2 * D;
        const double m = local[i].mid();
        const double am = std::abs(m);
        const std::size_t st = stride_[i];
        // Taylor shift along dimension i on every fibre.
        for (std::size_t base = 0; base < dense_size_; ++base) {
            if ((base / st) % (D + 1) != 0) {
                continue;
            }
            for (unsigned k = 0; k < D; ++k) {
                for (unsigned j = D - 1; j + 1 > k; --j) {
                    a[base + j * st] += m * a[base + (j + 1) * st];
                    s[base + j * st] += am * s[base + (j + 1) * st];
                    if (j == 0) {
                        break;
                    }
                }
            }
        }
    }
    double lo = 0.0, hi = 0.0, magnitude = 0.0;
    std::size_t terms = 0;
    for (std::size_t idx = 0; idx < dense_size_; ++idx) {
        if (s[idx] == 0.0) {
            continue;
        }
        ++terms;
        double r_pow = 1.0;
        bool even = true;
        for (std::size_t i = 0; i < d; ++i) {
            const unsigned k = static_cast<unsigned>((idx / stride_[i]) % (max_deg_[i] + 1));
            r_pow *= raw_pow(0.5 * local[i].width(), k);
            even = even && k % 2 == 0;
        }
        const double v = a[idx] * r_pow;
        if (idx == 0) {
            lo += v;
            hi += v;
        } else if (even) {
            lo += std::min(v, 0.0);
            hi += std::max(v, 0.0);
        } else {
            lo -= std::abs(v);
            hi += std::abs(v);
        }
        magnitude += s[idx] * r_pow;
    }
    const double n = static_cast<double>(ops + total_max_degree_ + terms) + 2.0;
    const double err = 4.0 * n * kUnit * magnitude;
    return {lo - err, hi + err};
}

Interval CompiledPoly::natural_bound(std::span<const Interval> local) const {
    const std::size_t d = vars_.size();
    // Power tables: pw[i][k] = range of x_i^k.
    thread_local std::vector<double> plo, phi;
    thread_local std::vector<std::size_t> offset;
    offset.assign(d + 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        offset[i + 1] = offset[i] + max_deg_[i] + 1;
    }
    plo.resize(offset[d]);
    phi.resize(offset[d]);
    for (std::size_t i = 0; i < d; ++i) {
        for (unsigned k = 0; k <= max_deg_[i]; ++k) {
            pow_range(local[i].lo, local[i].hi, k, plo[offset[i] + k], phi[offset[i] + k]);
        }
    }

    double lo = 0.0, hi = 0.0, magnitude = 0.0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        double tlo = coeffs_[t], thi = coeffs_[t];
        const auto* e = &exps_[t * d];
        for (std::size_t i = 0; i < d; ++i) {
            if (e[i] == 0) {
                continue;
            }
            double nlo, nhi;
            mul_range(tlo, thi, plo[offset[i] + e[i]], phi[offset[i] + e[i]], nlo, nhi);
            tlo = nlo;
            thi = nhi;
        }
        lo += tlo;
        hi += thi;
        magnitude += std::max(std::abs(tlo), std::abs(thi));
    }
    // A term of degree k is built with at most k roundings and the sum adds
    // one per extra term; zero roundings means the endpoints are exact.
    const double n = static_cast<double>(total_max_degree_ + coeffs_.size()) - 1.0;
    const double err = n > 0.0 ? 2.02 * n * kUnit * magnitude : 0.0;
    return {lo - err, hi + err};
}

Interval interval_bound(const Polynomial& p, const Box& box) {
    CompiledPoly cp(p, box.vars);
    return cp.bound(box.bounds);
}

}  // namespace stochcert::poly
