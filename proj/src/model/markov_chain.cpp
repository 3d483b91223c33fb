// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numeric>

#include "stochcert/model/model.hpp"

namespace stochcert::model {

MarkovChain::MarkovChain(std::vector<std::vector<double>> pi) : pi_(std::move(pi)) {
    if (pi_.empty()) {
        throw ModelError("", "transition matrix has no modes");
    }
    const std::size_t m = pi_.size();
    for (std::size_t r = 0; r < m; ++r) {
        const std::string path = "/" + std::to_string(r);
        if (pi_[r].size() != m) {
            throw ModelError(path, "transition matrix is not square");
        }
        double sum = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            const double v = pi_[r][c];
            if (!std::isfinite(v) || v < 0.0) {
                throw ModelError(path + "/" + std::to_string(c), "negative or non-finite transition probability");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowTolerance) {
            throw ModelError(path, "non-stochastic row (sums to " + std::to_string(sum) + ")");
        }
    }
}

std::vector<double> MarkovChain::stationary() const {
    const std::size_t m = modes();
    // (pi^T - I) p = 0 with the last equation replaced by sum p = 1.
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a[i][j] = pi_[j][i] - (i == j ? 1.0 : 0.0);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        a[m - 1][j] = 1.0;
    }
    a[m - 1][m] = 1.0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) {
                piv = r;
            }
        }
        std::swap(a[col], a[piv]);
        if (std::abs(a[col][col]) < 1e-14) {
            throw std::runtime_error("chain has no unique stationary distribution");
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) {
                continue;
            }
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= m; ++c) {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) {
        p[i] = a[i][m] / a[i][i];
    }
    return p;
}

}  // namespace stochcert::model
