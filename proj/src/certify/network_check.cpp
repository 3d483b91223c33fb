// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include <map>

#include "stochcert/certify/verify.hpp"

namespace stochcert::certify {

namespace {

using poly::Box;
using poly::Region;
using poly::VarRole;
using poly::VarSpace;

struct ProductModes {
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::vector<double>> pi;
};

ProductModes product_modes(const Network& net) {
    ProductModes pm;
    const std::size_t n = net.size();
    if (net.coupling() == model::ModeCoupling::shared) {
        const auto& chain = net.subsystem(0).chain();
        for (std::size_t p = 0; p < chain.modes(); ++p) {
            pm.tuples.emplace_back(n, p);
        }
        pm.pi = chain.matrix();
        return pm;
    }
    std::size_t total = 1;
    for (const auto& s : net.subsystems()) {
        total *= s.mode_count();
        if (total > kDirectMaxModes) {
            throw std::invalid_argument("product chain exceeds " + std::to_string(kDirectMaxModes) + " modes");
        }
    }
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<std::size_t> t(n);
        std::size_t r = k;
        for (std::size_t i = n; i-- > 0;) {
            t[i] = r % net.subsystem(i).mode_count();
            r /= net.subsystem(i).mode_count();
        }
        pm.tuples.push_back(std::move(t));
    }
    pm.pi.assign(total, std::vector<double>(total, 1.0));
    for (std::size_t a = 0; a < total; ++a) {
        for (std::size_t b = 0; b < total; ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                pm.pi[a][b] *= net.subsystem(i).chain()(pm.tuples[a][i], pm.tuples[b][i]);
            }
        }
    }
    return pm;
}

}  // namespace

VerificationReport verify_cbc_direct(const Network& net, const NetworkCertificate& cert, double tol,
                                     const poly::ProofBudget& budget) {
    const std::size_t n = net.size();
    if (cert.parts().size() != n) {
        throw CertificateError("network certificate has " + std::to_string(cert.parts().size()) +
                               " parts for " + std::to_string(n) + " subsystems");
    }
    std::size_t states = 0, noises = 0;
    std::vector<std::size_t> xoff, soff;
    for (std::size_t i = 0; i < n; ++i) {
        cert.parts()[i].check_compatible(net.subsystem(i));
        xoff.push_back(states);
        soff.push_back(noises);
        states += net.subsystem(i).dims().state;
        noises += net.subsystem(i).dims().noise;
    }
    if (states > kDirectMaxStates) {
        throw std::invalid_argument("product state dimension " + std::to_string(states) + " exceeds " +
                                    std::to_string(kDirectMaxStates));
    }
    const ProductModes pm = product_modes(net);

    const auto prod = VarSpace::standard(states, 0, 0, noises);
    auto var = [&](std::size_t idx) { return Polynomial::variable(prod, idx); };
    const Polynomial zero = Polynomial::constant(prod, 0.0);

    // Per-subsystem bindings of local state and noise variables.
    std::vector<std::map<std::size_t, Polynomial>> base(n);
    std::vector<Polynomial> y;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = net.subsystem(i);
        for (std::size_t k = 0; k < s.state_vars().size(); ++k) {
            base[i].emplace(s.state_vars()[k], var(xoff[i] + k));
        }
        for (std::size_t k = 0; k < s.noise_vars().size(); ++k) {
            base[i].emplace(s.noise_vars()[k], var(states + soff[i] + k));
        }
        for (auto v : s.input_vars()) {
            base[i].emplace(v, zero);
        }
        for (auto v : s.disturbance_vars()) {
            base[i].emplace(v, zero);
        }
        for (const auto& h : s.output()) {
            y.push_back(h.substitute(base[i], prod));
        }
    }
    std::vector<Polynomial> w(net.total_disturbances(), zero);
    for (const auto& c : net.interconnection()) {
        w[c.row] = w[c.row] + c.value * y[c.col];
    }

    // B_{i,p} and closed-loop f_{i,p} over the product space.
    std::vector<std::vector<Polynomial>> Bi(n);
    std::vector<std::vector<std::vector<Polynomial>>> fi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = net.subsystem(i);
        const auto& csc = cert.parts()[i];
        auto bind = base[i];
        for (std::size_t k = 0; k < s.disturbance_vars().size(); ++k) {
            bind.insert_or_assign(s.disturbance_vars()[k], w[net.disturbance_offset(i) + k]);
        }
        for (std::size_t p = 0; p < s.mode_count(); ++p) {
            Bi[i].push_back(cert.mu()[i] * csc.mode(p).B.substitute(base[i], prod));
            auto b = bind;
            for (std::size_t j = 0; j < s.input_vars().size(); ++j) {
                b.insert_or_assign(s.input_vars()[j], csc.mode(p).controller[j].substitute(base[i], prod));
            }
            std::vector<Polynomial> f;
            for (const auto& fk : s.mode(p).dynamics) {
                f.push_back(fk.substitute(b, prod));
            }
            fi[i].push_back(std::move(f));
        }
    }

    std::vector<std::size_t> state_idx(states);
    for (std::size_t k = 0; k < states; ++k) {
        state_idx[k] = k;
    }
    std::vector<poly::Interval> xb, x0b;
    Region unsafe;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = net.subsystem(i).regions();
        xb.insert(xb.end(), r.X.begin(), r.X.end());
        x0b.insert(x0b.end(), r.X0.begin(), r.X0.end());
        std::vector<Box> boxes;
        for (const auto& u : r.Xu) {
            std::vector<std::size_t> vars;
            for (std::size_t k = 0; k < u.size(); ++k) {
                vars.push_back(xoff[i] + k);
            }
            boxes.emplace_back(vars, u);
        }
        Region ri(std::move(boxes));
        unsafe = i == 0 ? ri : unsafe.product(ri);
    }
    const Region Xr(Box(state_idx, xb));
    const Region X0r(Box(state_idx, x0b));

    auto B_of = [&](const std::vector<std::size_t>& t) {
        Polynomial b = zero;
        for (std::size_t i = 0; i < n; ++i) {
            b = b + Bi[i][t[i]];
        }
        return b;
    };

    VerificationReport report;
    std::vector<std::size_t> noise_idx;
    for (std::size_t k = 0; k < noises; ++k) {
        noise_idx.push_back(states + k);
    }
    for (std::size_t a = 0; a < pm.tuples.size(); ++a) {
        const auto& ta = pm.tuples[a];
        const Polynomial B = B_of(ta);
        report.entries.push_back({a, Condition::init, poly::prove_nonneg((-B).add_constant(cert.gamma()), X0r, tol, budget)});
        if (!unsafe.empty()) {
            report.entries.push_back(
                {a, Condition::unsafe, poly::prove_nonneg(B.add_constant(-cert.lambda()), unsafe, tol, budget)});
        }
        report.entries.push_back({a, Condition::nonneg, poly::prove_nonneg(B, Xr, tol, budget)});

        std::map<std::size_t, Polynomial> next;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < fi[i][ta[i]].size(); ++k) {
                next.emplace(xoff[i] + k, fi[i][ta[i]][k]);
            }
        }
        Polynomial expect = zero;
        for (std::size_t b = 0; b < pm.tuples.size(); ++b) {
            if (pm.pi[a][b] == 0.0) {
                continue;
            }
            expect = expect + pm.pi[a][b] * poly::gaussian_expectation(B_of(pm.tuples[b]).substitute(next), noise_idx);
        }
        const Polynomial drift = (cert.kappa() * B).add_constant(cert.psi()) - expect;
        report.entries.push_back({a, Condition::drift, poly::prove_nonneg(drift, Xr, tol, budget)});
    }
    return report;
}

}  // namespace stochcert::certify
