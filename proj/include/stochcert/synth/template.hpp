// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "stochcert/certify/certificate.hpp"

namespace stochcert::synth {

using certify::SupplyMatrix;
using model::Subsystem;
using poly::Polynomial;

/// Search space of the synthesizer.
struct Template {
    /// Certificate: all state monomials up to this even degree.
    unsigned degree = 4;
    std::vector<double> kappa_grid{0.90, 0.91, 0.92, 0.93, 0.94, 0.95};
    std::vector<SupplyMatrix> supply_candidates;
    double gamma_max = 1e6;
    double lambda_max = 1e6;
    double psi_max = 1e6;
    /// Bound on each coefficient in the scaled basis (see certificate_basis).
    double coeff_bound = 1e3;
    /// Bound on each controller gain.
    double gain_bound = 1.0;

    /// Throws std::invalid_argument for an odd or small degree, a kappa
    /// outside (0,1), or supply matrices that do not fit `sub`.
    void validate(const Subsystem& sub) const;
};

/// Products of u_k = (x_k - c_k) / s_k with (c, s) the centre and half-width
/// of X, over all exponents of total degree <= d. Scaling keeps u in [-1, 1].
std::vector<Polynomial> certificate_basis(const Subsystem& sub, unsigned degree);

/// Affine controllers nu_j = a_j + sum_k g_jk (x_k - x0c_k), x0c the centre
/// of X0. Flattened per mode as [a_1, g_11..g_1n, a_2, ...].
struct ControllerParams {
    std::vector<std::vector<double>> per_mode;

    static ControllerParams initial(const Subsystem& sub);
    std::vector<Polynomial> polynomials(const Subsystem& sub, std::size_t p) const;
    /// Bounds of each flattened coordinate: a in U, g in [-gain, gain].
    static std::vector<std::pair<double, double>> bounds(const Subsystem& sub, double gain_bound);
};

/// Supply matrix used when a template lists none: zero disturbance and output
/// weight, which suits isolated subsystems.
SupplyMatrix zero_supply(const Subsystem& sub);

}  // namespace stochcert::synth
