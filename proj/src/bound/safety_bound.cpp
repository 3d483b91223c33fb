// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/bound/safety_bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochcert::bound {

BoundResult safety_bound(const BoundInput& in) {
    const bool finite = std::isfinite(in.gamma) && std::isfinite(in.lambda) && std::isfinite(in.kappa) &&
                        std::isfinite(in.psi);
    if (!finite || in.gamma < 0.0 || in.psi < 0.0) {
        throw std::invalid_argument("gamma and psi must be finite and nonnegative");
    }
    if (!(in.lambda > in.gamma)) {
        throw std::invalid_argument("lambda must exceed gamma");
    }
    if (!(in.kappa > 0.0 && in.kappa < 1.0)) {
        throw std::invalid_argument("kappa must lie in (0,1)");
    }
    const double T = static_cast<double>(in.horizon);
    BoundResult out;
    if (in.lambda >= in.psi / (1.0 - in.kappa)) {
        out.branch = 1;
        // log1p/expm1 keep the digits of a small delta.
        const double log_safe = std::log1p(-in.gamma / in.lambda) + T * std::log1p(-in.psi / in.lambda);
        out.raw = -std::expm1(log_safe);
    } else {
        out.branch = 2;
        const double kT = std::pow(in.kappa, T);
        out.raw = in.gamma / in.lambda * kT +
                  in.psi / ((1.0 - in.kappa) * in.lambda) * -std::expm1(T * std::log(in.kappa));
    }
    out.delta = std::clamp(out.raw, 0.0, 1.0);
    return out;
}

}  // namespace stochcert::bound
