// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/sim/binomial.hpp"

#include <cmath>
#include <stdexcept>

namespace stochcert::sim {

double binomial_cdf(std::size_t k, std::size_t n, double p) {
    if (k >= n || p <= 0.0) {
        return 1.0;
    }
    if (p >= 1.0) {
        return 0.0;
    }
    const double nn = static_cast<double>(n);
    const double lp = std::log(p), lq = std::log1p(-p);
    // Terms grow up to the mode, so sum from the largest term down.
    double lmax = -INFINITY;
    for (std::size_t i = 0; i <= k; ++i) {
        const double di = static_cast<double>(i);
        const double t = std::lgamma(nn + 1) - std::lgamma(di + 1) - std::lgamma(nn - di + 1) + di * lp +
                         (nn - di) * lq;
        lmax = std::max(lmax, t);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
        const double di = static_cast<double>(i);
        const double t = std::lgamma(nn + 1) - std::lgamma(di + 1) - std::lgamma(nn - di + 1) + di * lp +
                         (nn - di) * lq;
        sum += std::exp(t - lmax);
    }
    return std::min(1.0, std::exp(lmax) * sum);
}

namespace {

// Smallest p with f(p) <= target for a CDF decreasing in p.
template <class F>
double bisect(F f, double target) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ConfidenceInterval clopper_pearson(std::size_t k, std::size_t n, double alpha) {
    if (n == 0 || k > n) {
        throw std::invalid_argument("clopper_pearson needs 0 <= k <= n and n >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1)");
    }
    ConfidenceInterval ci;
    // Upper: P(X <= k; p) = alpha/2. Lower: P(X >= k; p) = alpha/2.
    ci.hi = k == n ? 1.0 : bisect([&](double p) { return binomial_cdf(k, n, p); }, alpha / 2);
    ci.lo = k == 0 ? 0.0 : bisect([&](double p) { return binomial_cdf(k - 1, n, p); }, 1.0 - alpha / 2);
    return ci;
}

}  // namespace stochcert::sim
