// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/certify/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stochcert::certify {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

SupplyMatrix::SupplyMatrix(std::size_t p, std::size_t q, std::vector<std::vector<double>> full)
    : p_(p), q_(q), m_(std::move(full)) {
    const std::size_t n = p_ + q_;
    if (m_.size() != n) {
        throw CertificateError("supply matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (const auto& row : m_) {
        if (row.size() != n) {
            throw CertificateError("supply matrix must be square");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw CertificateError("supply matrix has a non-finite entry");
            }
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) {
            const double s = 0.5 * (m_[r][c] + m_[c][r]);
            m_[r][c] = s;
            m_[c][r] = s;
        }
    }
}

SupplyMatrix SupplyMatrix::from_blocks(const std::vector<std::vector<double>>& x11,
                                       const std::vector<std::vector<double>>& x12,
                                       const std::vector<std::vector<double>>& x22) {
    const std::size_t p = x11.size();
    const std::size_t q = x22.size();
    if (x12.size() != p) {
        throw CertificateError("X12 must have as many rows as X11");
    }
    std::vector<std::vector<double>> full(p + q, std::vector<double>(p + q, 0.0));
    for (std::size_t r = 0; r < p; ++r) {
        if (x11[r].size() != p || x12[r].size() != q) {
            throw CertificateError("supply block dimensions do not conform");
        }
        for (std::size_t c = 0; c < p; ++c) {
            full[r][c] = x11[r][c];
        }
        for (std::size_t c = 0; c < q; ++c) {
            full[r][p + c] = x12[r][c];
            full[p + c][r] = x12[r][c];
        }
    }
    for (std::size_t r = 0; r < q; ++r) {
        if (x22[r].size() != q) {
            throw CertificateError("supply block dimensions do not conform");
        }
        for (std::size_t c = 0; c < q; ++c) {
            full[p + r][p + c] = x22[r][c];
        }
    }
    return SupplyMatrix(p, q, std::move(full));
}

Polynomial SupplyMatrix::quadratic_form(const std::vector<Polynomial>& w, const std::vector<Polynomial>& y) const {
    if (w.size() != p_ || y.size() != q_) {
        throw CertificateError("supply form arguments do not match the matrix blocks");
    }
    if (w.empty() && y.empty()) {
        throw CertificateError("empty supply form has no variable space");
    }
    std::vector<const Polynomial*> z;
    for (const auto& v : w) {
        z.push_back(&v);
    }
    for (const auto& v : y) {
        z.push_back(&v);
    }
    Polynomial out = Polynomial::constant(z.front()->space(), 0.0);
    for (std::size_t r = 0; r < z.size(); ++r) {
        if (m_[r][r] != 0.0) {
            out = out + m_[r][r] * (*z[r] * *z[r]);
        }
        for (std::size_t c = r + 1; c < z.size(); ++c) {
            if (m_[r][c] != 0.0) {
                out = out + (2.0 * m_[r][c]) * (*z[r] * *z[c]);
            }
        }
    }
    return out;
}

StorageCertificate::StorageCertificate(std::vector<ModeCertificate> modes, SupplyMatrix X)
    : modes_(std::move(modes)), X_(std::move(X)) {
    if (modes_.empty()) {
        throw CertificateError("certificate has no modes");
    }
    for (std::size_t p = 0; p < modes_.size(); ++p) {
        const auto& m = modes_[p];
        const std::string where = "mode " + std::to_string(p) + ": ";
        if (!(m.kappa > 0.0 && m.kappa < 1.0)) {
            throw CertificateError(where + "kappa must lie in (0,1)");
        }
        if (!finite_nonneg(m.gamma) || !finite_nonneg(m.lambda) || !finite_nonneg(m.psi)) {
            throw CertificateError(where + "gamma, lambda and psi must be finite and nonnegative");
        }
        if (!m.B.space()) {
            throw CertificateError(where + "certificate polynomial missing");
        }
        for (const auto& c : m.controller) {
            if (!poly::same_space(c.space(), m.B.space())) {
                throw CertificateError(where + "controller and certificate use different variable spaces");
            }
        }
    }
    for (std::size_t p = 1; p < modes_.size(); ++p) {
        if (!poly::same_space(modes_[p].B.space(), modes_[0].B.space())) {
            throw CertificateError("modes use different variable spaces");
        }
    }
}

void StorageCertificate::check_compatible(const Subsystem& sub) const {
    if (modes_.size() != sub.mode_count()) {
        throw CertificateError("certificate has " + std::to_string(modes_.size()) + " modes, subsystem has " +
                               std::to_string(sub.mode_count()));
    }
    if (X_.p() != sub.dims().disturbance || X_.q() != sub.dims().output) {
        throw CertificateError("supply matrix blocks do not match disturbance/output dimensions");
    }
    for (std::size_t p = 0; p < modes_.size(); ++p) {
        const auto& m = modes_[p];
        const std::string where = "mode " + std::to_string(p) + ": ";
        if (!poly::same_space(m.B.space(), sub.space())) {
            throw CertificateError(where + "certificate over a foreign variable space");
        }
        if (m.controller.size() != sub.dims().input) {
            throw CertificateError(where + "expected " + std::to_string(sub.dims().input) +
                                   " controller polynomials");
        }
        auto state_only = [&](const Polynomial& q, const std::string& what) {
            for (auto v : q.free_variables()) {
                if (sub.space()->var(v).role != poly::VarRole::state) {
                    throw CertificateError(where + what + " depends on non-state variable '" +
                                           sub.space()->var(v).name + "'");
                }
            }
        };
        state_only(m.B, "certificate");
        for (const auto& c : m.controller) {
            state_only(c, "controller");
        }
    }
}

NetworkCertificate::NetworkCertificate(std::vector<double> mu, std::vector<StorageCertificate> parts, double gamma,
                                       double lambda, double kappa, double psi)
    : mu_(std::move(mu)), parts_(std::move(parts)), gamma_(gamma), lambda_(lambda), kappa_(kappa), psi_(psi) {
    if (mu_.size() != parts_.size()) {
        throw CertificateError("one weight per subsystem certificate required");
    }
    for (double m : mu_) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw CertificateError("weights must be positive");
        }
    }
    if (!(kappa_ > 0.0 && kappa_ < 1.0)) {
        throw CertificateError("kappa must lie in (0,1)");
    }
    if (!finite_nonneg(gamma_) || !finite_nonneg(lambda_) || !finite_nonneg(psi_)) {
        throw CertificateError("gamma, lambda and psi must be finite and nonnegative");
    }
    if (!(lambda_ > gamma_)) {
        throw CertificateError("lambda must exceed gamma");
    }
}

const char* condition_name(Condition c) {
    switch (c) {
    case Condition::init: return "init";
    case Condition::unsafe: return "unsafe";
    case Condition::nonneg: return "nonneg";
    case Condition::drift: return "drift";
    }
    return "?";
}

Condition parse_condition(const std::string& name) {
    for (auto c : {Condition::init, Condition::unsafe, Condition::nonneg, Condition::drift}) {
        if (name == condition_name(c)) {
            return c;
        }
    }
    throw CertificateError("unknown condition '" + name + "' (expected init, unsafe, nonneg or drift)");
}

Verdict VerificationReport::verdict() const {
    bool unknown = false;
    for (const auto& e : entries) {
        if (e.outcome.verdict == Verdict::counterexample) {
            return Verdict::counterexample;
        }
        unknown = unknown || e.outcome.verdict == Verdict::unknown;
    }
    return unknown ? Verdict::unknown : Verdict::proved;
}

double VerificationReport::margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
        const double v = e.outcome.verdict == Verdict::counterexample ? e.outcome.value : e.outcome.bound;
        m = std::min(m, v);
    }
    return m;
}

}  // namespace stochcert::certify
