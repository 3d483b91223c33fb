// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/certify/verify.hpp"

#include <algorithm>
#include <sstream>

namespace stochcert::certify {

namespace {

bool selected(const std::vector<Condition>& conds, Condition c) {
    return std::find(conds.begin(), conds.end(), c) != conds.end();
}

}  // namespace

VerificationReport verify_csc(const Subsystem& sub, const StorageCertificate& csc, const VerifyOptions& opt) {
    csc.check_compatible(sub);
    std::vector<Residual> cells;
    for (std::size_t p = 0; p < sub.mode_count(); ++p) {
        for (auto& r : csc_residuals(sub, csc, p)) {
            if (selected(opt.conditions, r.condition) && !r.region.empty()) {
                cells.push_back(std::move(r));
            }
        }
    }
    VerificationReport report;
    report.entries.resize(cells.size());
    parallel_for(cells.size(), opt.threads, [&](std::size_t i) {
        report.entries[i] = {cells[i].mode, cells[i].condition,
                             poly::prove_nonneg(cells[i].poly, cells[i].region, opt.tol, opt.budget)};
    });

    const auto X = sub.state_box();
    for (std::size_t p = 0; p < sub.mode_count(); ++p) {
        const auto& ctrl = csc.mode(p).controller;
        for (std::size_t j = 0; j < ctrl.size(); ++j) {
            const auto img = poly::interval_bound(ctrl[j], X);
            const auto& U = sub.regions().U[j];
            if (!U.contains(img)) {
                std::ostringstream msg;
                msg << "mode " << p << " controller " << j << " image [" << img.lo << ", " << img.hi
                    << "] over X leaves U = [" << U.lo << ", " << U.hi << "]";
                report.warnings.push_back(msg.str());
            }
        }
    }
    return report;
}

}  // namespace stochcert::certify
