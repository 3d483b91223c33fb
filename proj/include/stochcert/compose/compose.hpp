// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "stochcert/certify/certificate.hpp"
#include "stochcert/compose/jacobi.hpp"

namespace stochcert::compose {

using certify::NetworkCertificate;
using certify::StorageCertificate;
using model::Network;

/// Weighted supply matrices laid out over [w_1..w_N; y_1..y_N]: X11 blocks
/// on the upper-left diagonal, X12 upper-right, X21 lower-left, X22
/// lower-right, each scaled by mu_i.
struct ComposedMatrix {
    std::size_t disturbances = 0;
    std::size_t outputs = 0;
    DenseMatrix m;
};

ComposedMatrix assemble_xcmp(const Network& net, const std::vector<StorageCertificate>& cscs,
                             const std::vector<double>& mu);

enum class LmiMethod { automatic, eigen, gershgorin };

const char* lmi_method_name(LmiMethod m);

struct LmiResult {
    bool holds = false;
    /// Eigen: largest eigenvalue of S. Gershgorin: largest value of the
    /// scalar quadratic over the disc enclosure of spec(M).
    double max_eig = 0.0;
    LmiMethod method = LmiMethod::eigen;
    std::size_t dim = 0;
    /// Gershgorin only: enclosure of spec(M) and the maximizing s.
    double s_lo = 0.0, s_hi = 0.0, s_at_max = 0.0;
};

/// S = [M; I]^T Xcmp [M; I], dense.
DenseMatrix lmi_matrix(const Network& net, const ComposedMatrix& xcmp);

/// Checks S <= 0 up to tol on the largest eigenvalue. `automatic` takes the
/// Gershgorin path when M is symmetric and every block of Xcmp is a scalar
/// multiple of the identity, and the Jacobi path otherwise.
LmiResult check_dissipativity_lmi(const Network& net, const ComposedMatrix& xcmp, double tol = 1e-9,
                                  LmiMethod method = LmiMethod::automatic);

/// Whether the scalar fast path applies to (M, Xcmp).
bool gershgorin_applicable(const Network& net, const ComposedMatrix& xcmp);

struct LevelGap {
    bool holds = false;
    /// sum mu_i min_p lambda_ip
    double lhs = 0.0;
    /// sum mu_i max_p gamma_ip
    double rhs = 0.0;
};

LevelGap check_level_gap(const std::vector<StorageCertificate>& cscs, const std::vector<double>& mu);

struct ComposedConstants {
    double gamma = 0.0, lambda = 0.0, kappa = 0.0, psi = 0.0;
};

ComposedConstants composed_constants(const std::vector<StorageCertificate>& cscs, const std::vector<double>& mu);

class CompositionRefused : public std::runtime_error {
public:
    CompositionRefused(std::string condition, const std::string& what)
        : std::runtime_error(what), condition_(std::move(condition)) {}
    /// "dissipativity" or "level-gap".
    const std::string& condition() const { return condition_; }

private:
    std::string condition_;
};

/// Builds the network certificate after both compositional checks pass;
/// kappa is max over i, p of kappa_ip.
NetworkCertificate compose_cbc(const Network& net, const std::vector<StorageCertificate>& cscs,
                               const std::vector<double>& mu, double tol = 1e-9,
                               LmiMethod method = LmiMethod::automatic);

}  // namespace stochcert::compose
