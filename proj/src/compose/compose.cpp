// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/compose/compose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stochcert::compose {

namespace {

/// Neumaier-compensated sum.
class Sum {
public:
    void add(double v) {
        const double t = s_ + v;
        c_ += std::abs(s_) >= std::abs(v) ? (s_ - t) + v : (v - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

void check_inputs(std::size_t n, const std::vector<StorageCertificate>& cscs, const std::vector<double>& mu) {
    if (cscs.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " certificates, got " +
                                    std::to_string(cscs.size()));
    }
    if (mu.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " weights, got " + std::to_string(mu.size()));
    }
    for (double m : mu) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("weights must be positive and finite");
        }
    }
}

// Value a s^2 + 2 b s + c maximized over [lo, hi]; returns (value, argmax).
std::pair<double, double> quadratic_max(double a, double b, double c, double lo, double hi) {
    auto f = [&](double s) { return a * s * s + 2.0 * b * s + c; };
    std::pair<double, double> best{f(lo), lo};
    if (f(hi) > best.first) {
        best = {f(hi), hi};
    }
    if (a < 0.0) {
        const double v = -b / a;
        if (v > lo && v < hi && f(v) > best.first) {
            best = {f(v), v};
        }
    }
    return best;
}

}  // namespace

ComposedMatrix assemble_xcmp(const Network& net, const std::vector<StorageCertificate>& cscs,
                             const std::vector<double>& mu) {
    check_inputs(net.size(), cscs, mu);
    ComposedMatrix out;
    out.disturbances = net.total_disturbances();
    out.outputs = net.total_outputs();
    out.m = DenseMatrix(out.disturbances + out.outputs);
    const std::size_t P = out.disturbances;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& X = cscs[i].supply();
        const auto& d = net.subsystem(i).dims();
        if (X.p() != d.disturbance || X.q() != d.output) {
            throw std::invalid_argument("supply matrix of subsystem " + std::to_string(i) +
                                        " does not match its dimensions");
        }
        const std::size_t wo = net.disturbance_offset(i), yo = P + net.output_offset(i);
        for (std::size_t r = 0; r < X.p(); ++r) {
            for (std::size_t c = 0; c < X.p(); ++c) {
                out.m(wo + r, wo + c) = mu[i] * X.x11(r, c);
            }
            for (std::size_t c = 0; c < X.q(); ++c) {
                out.m(wo + r, yo + c) = mu[i] * X.x12(r, c);
                out.m(yo + c, wo + r) = mu[i] * X.x12(r, c);
            }
        }
        for (std::size_t r = 0; r < X.q(); ++r) {
            for (std::size_t c = 0; c < X.q(); ++c) {
                out.m(yo + r, yo + c) = mu[i] * X.x22(r, c);
            }
        }
    }
    return out;
}

const char* lmi_method_name(LmiMethod m) {
    switch (m) {
    case LmiMethod::automatic: return "automatic";
    case LmiMethod::eigen: return "eigen";
    case LmiMethod::gershgorin: return "gershgorin";
    }
    return "?";
}

DenseMatrix lmi_matrix(const Network& net, const ComposedMatrix& x) {
    const std::size_t P = net.total_disturbances(), Q = net.total_outputs();
    if (x.disturbances != P || x.outputs != Q || x.m.n != P + Q) {
        throw std::invalid_argument("composed matrix does not match the network dimensions");
    }
    const auto& M = net.interconnection();
    // T = X11 M + X12 (P x Q), then S = M^T T + X21 M + X22.
    std::vector<double> T(P * Q, 0.0);
    for (std::size_t r = 0; r < P; ++r) {
        for (std::size_t c = 0; c < Q; ++c) {
            T[r * Q + c] = x.m(r, P + c);
        }
    }
    for (const auto& e : M) {
        for (std::size_t r = 0; r < P; ++r) {
            T[r * Q + e.col] += x.m(r, e.row) * e.value;
        }
    }
    DenseMatrix S(Q);
    for (std::size_t r = 0; r < Q; ++r) {
        for (std::size_t c = 0; c < Q; ++c) {
            S(r, c) = x.m(P + r, P + c);
        }
    }
    for (const auto& e : M) {
        for (std::size_t c = 0; c < Q; ++c) {
            S(e.col, c) += e.value * T[e.row * Q + c];
            S(c, e.col) += x.m(P + c, e.row) * e.value;
        }
    }
    for (std::size_t r = 0; r < Q; ++r) {
        for (std::size_t c = r + 1; c < Q; ++c) {
            const double s = 0.5 * (S(r, c) + S(c, r));
            S(r, c) = s;
            S(c, r) = s;
        }
    }
    return S;
}

bool gershgorin_applicable(const Network& net, const ComposedMatrix& x) {
    const std::size_t P = net.total_disturbances(), Q = net.total_outputs();
    if (P != Q || P == 0 || x.m.n != P + Q) {
        return false;
    }
    const auto dense = net.dense_interconnection();
    for (std::size_t r = 0; r < P; ++r) {
        for (std::size_t c = r + 1; c < P; ++c) {
            if (dense[r][c] != dense[c][r]) {
                return false;
            }
        }
    }
    // Each of the four blocks must be a scalar times the identity.
    for (std::size_t br : {std::size_t{0}, P}) {
        for (std::size_t bc : {std::size_t{0}, P}) {
            const double d = x.m(br, bc);
            for (std::size_t r = 0; r < P; ++r) {
                for (std::size_t c = 0; c < P; ++c) {
                    if (x.m(br + r, bc + c) != (r == c ? d : 0.0)) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

LmiResult check_dissipativity_lmi(const Network& net, const ComposedMatrix& x, double tol, LmiMethod method) {
    LmiResult out;
    out.dim = net.total_outputs();
    const bool fast = gershgorin_applicable(net, x);
    if (method == LmiMethod::gershgorin && !fast) {
        throw std::invalid_argument("Gershgorin path needs symmetric M and scalar supply blocks");
    }
    if (method == LmiMethod::automatic) {
        method = fast ? LmiMethod::gershgorin : LmiMethod::eigen;
    }
    out.method = method;
    if (method == LmiMethod::gershgorin) {
        const std::size_t P = net.total_disturbances();
        const double a = x.m(0, 0), b = x.m(0, P), c = x.m(P, P);
        const auto dense = net.dense_interconnection();
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t r = 0; r < P; ++r) {
            double radius = 0.0;
            for (std::size_t k = 0; k < P; ++k) {
                if (k != r) {
                    radius += std::abs(dense[r][k]);
                }
            }
            lo = std::min(lo, dense[r][r] - radius);
            hi = std::max(hi, dense[r][r] + radius);
        }
        const auto [v, s] = quadratic_max(a, b, c, lo, hi);
        out.max_eig = v;
        out.s_lo = lo;
        out.s_hi = hi;
        out.s_at_max = s;
    } else if (out.dim == 0) {
        out.max_eig = -std::numeric_limits<double>::infinity();
    } else {
        out.max_eig = jacobi_eigen(lmi_matrix(net, x)).values.back();
    }
    out.holds = out.max_eig <= tol;
    return out;
}

LevelGap check_level_gap(const std::vector<StorageCertificate>& cscs, const std::vector<double>& mu) {
    check_inputs(cscs.size(), cscs, mu);
    Sum lhs, rhs;
    for (std::size_t i = 0; i < cscs.size(); ++i) {
        double lmin = std::numeric_limits<double>::infinity(), gmax = -lmin;
        for (const auto& m : cscs[i].modes()) {
            lmin = std::min(lmin, m.lambda);
            gmax = std::max(gmax, m.gamma);
        }
        lhs.add(mu[i] * lmin);
        rhs.add(mu[i] * gmax);
    }
    return {lhs.value() > rhs.value(), lhs.value(), rhs.value()};
}

ComposedConstants composed_constants(const std::vector<StorageCertificate>& cscs, const std::vector<double>& mu) {
    const auto gap = check_level_gap(cscs, mu);
    Sum psi;
    double kappa = 0.0;
    for (std::size_t i = 0; i < cscs.size(); ++i) {
        double pmax = 0.0;
        for (const auto& m : cscs[i].modes()) {
            pmax = std::max(pmax, m.psi);
            kappa = std::max(kappa, m.kappa);
        }
        psi.add(mu[i] * pmax);
    }
    return {gap.rhs, gap.lhs, kappa, psi.value()};
}

NetworkCertificate compose_cbc(const Network& net, const std::vector<StorageCertificate>& cscs,
                               const std::vector<double>& mu, double tol, LmiMethod method) {
    const auto lmi = check_dissipativity_lmi(net, assemble_xcmp(net, cscs, mu), tol, method);
    if (!lmi.holds) {
        throw CompositionRefused("dissipativity", "dissipativity LMI fails: largest eigenvalue " +
                                                      std::to_string(lmi.max_eig) + " > " + std::to_string(tol));
    }
    const auto gap = check_level_gap(cscs, mu);
    if (!gap.holds) {
        throw CompositionRefused("level-gap", "level gap fails: sum mu min lambda = " + std::to_string(gap.lhs) +
                                                  " does not exceed sum mu max gamma = " + std::to_string(gap.rhs));
    }
    const auto k = composed_constants(cscs, mu);
    return NetworkCertificate(mu, cscs, k.gamma, k.lambda, k.kappa, k.psi);
}

}  // namespace stochcert::compose
