// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochcert/model/model.hpp"
#include "stochcert/poly/nonneg.hpp"

namespace stochcert::certify {

using model::Network;
using model::Subsystem;
using poly::NonnegOutcome;
using poly::Polynomial;
using poly::Verdict;

class CertificateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Symmetric supply matrix over [w; y], w of size p and y of size q.
class SupplyMatrix {
public:
    SupplyMatrix() = default;
    /// `full` is (p+q) x (p+q); it is replaced by (full + full^T)/2.
    SupplyMatrix(std::size_t p, std::size_t q, std::vector<std::vector<double>> full);
    static SupplyMatrix from_blocks(const std::vector<std::vector<double>>& x11,
                                    const std::vector<std::vector<double>>& x12,
                                    const std::vector<std::vector<double>>& x22);

    std::size_t p() const { return p_; }
    std::size_t q() const { return q_; }
    double operator()(std::size_t r, std::size_t c) const { return m_.at(r).at(c); }
    const std::vector<std::vector<double>>& matrix() const { return m_; }
    double x11(std::size_t r, std::size_t c) const { return m_[r][c]; }
    double x12(std::size_t r, std::size_t c) const { return m_[r][p_ + c]; }
    double x22(std::size_t r, std::size_t c) const { return m_[p_ + r][p_ + c]; }

    /// [w; y]^T X [w; y] with w and y given as polynomials.
    Polynomial quadratic_form(const std::vector<Polynomial>& w, const std::vector<Polynomial>& y) const;

    bool operator==(const SupplyMatrix&) const = default;

private:
    std::size_t p_ = 0;
    std::size_t q_ = 0;
    std::vector<std::vector<double>> m_;
};

struct ModeCertificate {
    /// Certificate over the subsystem space, state variables only.
    Polynomial B;
    double kappa = 0.5;
    double gamma = 0.0;
    double lambda = 0.0;
    double psi = 0.0;
    /// One polynomial per input, state variables only.
    std::vector<Polynomial> controller;
};

/// Mode-indexed storage certificate with one supply matrix.
class StorageCertificate {
public:
    StorageCertificate(std::vector<ModeCertificate> modes, SupplyMatrix X);

    std::size_t mode_count() const { return modes_.size(); }
    const ModeCertificate& mode(std::size_t p) const { return modes_.at(p); }
    const std::vector<ModeCertificate>& modes() const { return modes_; }
    const SupplyMatrix& supply() const { return X_; }

    /// Throws CertificateError when the certificate does not fit `sub`.
    void check_compatible(const Subsystem& sub) const;

private:
    std::vector<ModeCertificate> modes_;
    SupplyMatrix X_;
};

/// Weighted sum of subsystem certificates with composed constants.
class NetworkCertificate {
public:
    NetworkCertificate(std::vector<double> mu, std::vector<StorageCertificate> parts, double gamma,
                       double lambda, double kappa, double psi);

    const std::vector<double>& mu() const { return mu_; }
    const std::vector<StorageCertificate>& parts() const { return parts_; }
    double gamma() const { return gamma_; }
    double lambda() const { return lambda_; }
    double kappa() const { return kappa_; }
    double psi() const { return psi_; }

private:
    std::vector<double> mu_;
    std::vector<StorageCertificate> parts_;
    double gamma_, lambda_, kappa_, psi_;
};

enum class Condition { init, unsafe, nonneg, drift };

const char* condition_name(Condition c);
Condition parse_condition(const std::string& name);

struct ReportEntry {
    /// Mode index; for network checks, the product-mode index.
    std::size_t mode = 0;
    Condition condition = Condition::init;
    NonnegOutcome outcome;
};

struct VerificationReport {
    std::vector<ReportEntry> entries;
    std::vector<std::string> warnings;

    /// Proved iff every entry is; otherwise counterexample if any entry has one.
    Verdict verdict() const;
    /// Smallest proven or sampled lower bound across entries.
    double margin() const;
};

}  // namespace stochcert::certify
