// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/synth/template.hpp"

#include <stdexcept>

namespace stochcert::synth {

void Template::validate(const Subsystem& sub) const {
    if (degree < 2 || degree % 2 != 0) {
        throw std::invalid_argument("certificate degree must be even and at least 2");
    }
    if (kappa_grid.empty()) {
        throw std::invalid_argument("kappa grid is empty");
    }
    for (double k : kappa_grid) {
        if (!(k > 0.0 && k < 1.0)) {
            throw std::invalid_argument("kappa grid values must lie in (0,1)");
        }
    }
    for (const auto& X : supply_candidates) {
        if (X.p() != sub.dims().disturbance || X.q() != sub.dims().output) {
            throw std::invalid_argument("supply candidate does not match disturbance/output dimensions");
        }
    }
    if (!(coeff_bound > 0.0) || !(gain_bound >= 0.0) || !(lambda_max > 0.0) || !(gamma_max >= 0.0) ||
        !(psi_max >= 0.0)) {
        throw std::invalid_argument("template bounds must be positive");
    }
}

std::vector<Polynomial> certificate_basis(const Subsystem& sub, unsigned degree) {
    const auto& space = sub.space();
    const auto& X = sub.regions().X;
    std::vector<Polynomial> u;
    for (std::size_t k = 0; k < sub.state_vars().size(); ++k) {
        const double c = X[k].mid();
        const double s = X[k].width() > 0.0 ? 0.5 * X[k].width() : 1.0;
        u.push_back(Polynomial::variable(space, sub.state_vars()[k]).add_constant(-c).scale(1.0 / s));
    }
    std::vector<Polynomial> out;
    for (const auto& e : poly::monomials_up_to(space->size(), sub.state_vars(), degree)) {
        Polynomial b = Polynomial::constant(space, 1.0);
        for (std::size_t k = 0; k < u.size(); ++k) {
            const auto exp = e[sub.state_vars()[k]];
            if (exp > 0) {
                b = b * u[k].pow(exp);
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

ControllerParams ControllerParams::initial(const Subsystem& sub) {
    ControllerParams c;
    const std::size_t n = sub.dims().state;
    for (std::size_t p = 0; p < sub.mode_count(); ++p) {
        std::vector<double> v;
        for (const auto& U : sub.regions().U) {
            v.push_back(U.mid());
            v.insert(v.end(), n, 0.0);
        }
        c.per_mode.push_back(std::move(v));
    }
    return c;
}

std::vector<Polynomial> ControllerParams::polynomials(const Subsystem& sub, std::size_t p) const {
    const std::size_t n = sub.dims().state;
    const auto& v = per_mode.at(p);
    std::vector<Polynomial> out;
    for (std::size_t j = 0; j < sub.dims().input; ++j) {
        const double* row = &v.at(j * (n + 1));
        Polynomial nu = Polynomial::constant(sub.space(), row[0]);
        for (std::size_t k = 0; k < n; ++k) {
            if (row[1 + k] != 0.0) {
                const double c = sub.regions().X0[k].mid();
                nu = nu + row[1 + k] * Polynomial::variable(sub.space(), sub.state_vars()[k]).add_constant(-c);
            }
        }
        out.push_back(std::move(nu));
    }
    return out;
}

std::vector<std::pair<double, double>> ControllerParams::bounds(const Subsystem& sub, double gain_bound) {
    std::vector<std::pair<double, double>> b;
    for (const auto& U : sub.regions().U) {
        b.emplace_back(U.lo, U.hi);
        for (std::size_t k = 0; k < sub.dims().state; ++k) {
            b.emplace_back(-gain_bound, gain_bound);
        }
    }
    return b;
}

SupplyMatrix zero_supply(const Subsystem& sub) {
    const std::size_t n = sub.dims().disturbance + sub.dims().output;
    return SupplyMatrix(sub.dims().disturbance, sub.dims().output,
                        std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

}  // namespace stochcert::synth
