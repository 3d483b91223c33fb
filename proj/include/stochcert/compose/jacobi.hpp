// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "stochcert/solver_failure.hpp"

namespace stochcert::compose {

/// Dense row-major square matrix.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> values;
    /// Column k of `vectors` belongs to values[k].
    DenseMatrix vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix (the strict upper triangle
/// is mirrored first). Throws SolverFailure when the off-diagonal mass does
/// not fall below rel_tol * ||A||_F within max_sweeps.
EigenDecomposition jacobi_eigen(DenseMatrix m, int max_sweeps = 100, double rel_tol = 1e-15);

}  // namespace stochcert::compose
