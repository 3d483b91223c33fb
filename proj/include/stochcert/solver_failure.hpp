// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace stochcert {

/// A numerical routine could not produce a trustworthy answer.
class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stochcert
