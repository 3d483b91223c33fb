// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include <map>

#include "stochcert/certify/verify.hpp"

namespace stochcert::certify {

std::vector<Polynomial> closed_loop(const Subsystem& sub, const StorageCertificate& csc, std::size_t p) {
    csc.check_compatible(sub);
    if (p >= sub.mode_count()) {
        throw CertificateError("mode " + std::to_string(p) + " out of range");
    }
    std::map<std::size_t, Polynomial> bind;
    const auto& ctrl = csc.mode(p).controller;
    for (std::size_t j = 0; j < sub.input_vars().size(); ++j) {
        bind.emplace(sub.input_vars()[j], ctrl[j]);
    }
    std::vector<Polynomial> out;
    for (const auto& f : sub.mode(p).dynamics) {
        out.push_back(bind.empty() ? f : f.substitute(bind));
    }
    return out;
}

Polynomial expected_next_value(const Subsystem& sub, const StorageCertificate& csc, std::size_t p) {
    const auto fcl = closed_loop(sub, csc, p);
    std::map<std::size_t, Polynomial> next;
    for (std::size_t k = 0; k < sub.state_vars().size(); ++k) {
        next.emplace(sub.state_vars()[k], fcl[k]);
    }
    Polynomial sum = Polynomial::constant(sub.space(), 0.0);
    for (std::size_t q = 0; q < sub.mode_count(); ++q) {
        const double w = sub.chain()(p, q);
        if (w == 0.0) {
            continue;
        }
        const Polynomial composed = csc.mode(q).B.substitute(next);
        sum = sum + w * poly::gaussian_expectation(composed, sub.noise_vars());
    }
    return sum;
}

std::vector<Residual> csc_residuals(const Subsystem& sub, const StorageCertificate& csc, std::size_t p) {
    const auto& m = csc.mode(p);
    std::vector<Residual> out;
    out.push_back({p, Condition::init, (-m.B).add_constant(m.gamma), poly::Region(sub.init_box())});
    out.push_back({p, Condition::unsafe, m.B.add_constant(-m.lambda), sub.unsafe_region()});
    out.push_back({p, Condition::nonneg, m.B, poly::Region(sub.state_box())});

    std::vector<Polynomial> w;
    for (auto v : sub.disturbance_vars()) {
        w.push_back(Polynomial::variable(sub.space(), v));
    }
    Polynomial drift = (m.kappa * m.B).add_constant(m.psi) - expected_next_value(sub, csc, p);
    if (!w.empty() || !sub.output().empty()) {
        drift = drift + csc.supply().quadratic_form(w, sub.output());
    }
    out.push_back({p, Condition::drift, drift, poly::Region(sub.state_disturbance_box())});
    return out;
}

}  // namespace stochcert::certify
