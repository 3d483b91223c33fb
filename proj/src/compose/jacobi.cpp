// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/compose/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stochcert::compose {

namespace {

double off_diagonal(const DenseMatrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.n; ++r) {
        for (std::size_t c = r + 1; c < m.n; ++c) {
            s += 2.0 * m(r, c) * m(r, c);
        }
    }
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(DenseMatrix m, int max_sweeps, double rel_tol) {
    const std::size_t n = m.n;
    if (m.a.size() != n * n) {
        throw std::invalid_argument("matrix storage does not match its dimension");
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) {
            m(c, r) = m(r, c);
        }
    }
    for (double v : m.a) {
        if (!std::isfinite(v)) {
            throw SolverFailure("matrix has a non-finite entry");
        }
    }
    DenseMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }
    double norm = 0.0;
    for (double x : m.a) {
        norm += x * x;
    }
    norm = std::sqrt(norm);

    int sweep = 0;
    while (off_diagonal(m) > rel_tol * norm) {
        if (sweep == max_sweeps) {
            throw SolverFailure("Jacobi iteration did not converge in " + std::to_string(max_sweeps) + " sweeps");
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) {
                    continue;
                }
                // Rotation that annihilates (p,q) with |theta| <= pi/4.
                const double tau = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return m(i, i) < m(j, j); });
    EigenDecomposition out;
    out.sweeps = sweep;
    out.vectors = DenseMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values.push_back(m(order[k], order[k]));
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

}  // namespace stochcert::compose
