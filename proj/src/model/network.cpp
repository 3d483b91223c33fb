// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "stochcert/model/model.hpp"

namespace stochcert::model {

Network::Network(std::vector<Subsystem> subsystems, std::vector<Coupling> interconnection,
                 ModeCoupling coupling)
    : subsystems_(std::move(subsystems)), coupling_(coupling) {
    if (subsystems_.empty()) {
        throw ModelError("/subsystems", "network has no subsystems");
    }
    disturbance_offset_.push_back(0);
    output_offset_.push_back(0);
    for (const auto& s : subsystems_) {
        disturbance_offset_.push_back(disturbance_offset_.back() + s.dims().disturbance);
        output_offset_.push_back(output_offset_.back() + s.dims().output);
    }

    std::map<std::pair<std::size_t, std::size_t>, double> merged;
    for (std::size_t k = 0; k < interconnection.size(); ++k) {
        const auto& c = interconnection[k];
        const std::string path = "/interconnection/" + std::to_string(k);
        if (c.row >= total_disturbances()) {
            throw ModelError(path, "row " + std::to_string(c.row) + " beyond " +
                                       std::to_string(total_disturbances()) + " stacked disturbances");
        }
        if (c.col >= total_outputs()) {
            throw ModelError(path, "column " + std::to_string(c.col) + " beyond " +
                                       std::to_string(total_outputs()) + " stacked outputs");
        }
        if (!std::isfinite(c.value)) {
            throw ModelError(path, "non-finite coupling value");
        }
        merged[{c.row, c.col}] += c.value;
    }
    for (const auto& [rc, v] : merged) {
        couplings_.push_back({rc.first, rc.second, v});
    }

    if (coupling_ == ModeCoupling::shared) {
        for (std::size_t i = 1; i < subsystems_.size(); ++i) {
            if (!(subsystems_[i].chain() == subsystems_[0].chain())) {
                throw ModelError("/subsystems/" + std::to_string(i) + "/pi",
                                 "shared mode coupling requires identical transition matrices");
            }
        }
    }
}

std::size_t Network::nonzeros() const {
    return static_cast<std::size_t>(
        std::count_if(couplings_.begin(), couplings_.end(), [](const Coupling& c) { return c.value != 0.0; }));
}

std::vector<std::vector<double>> Network::dense_interconnection() const {
    std::vector<std::vector<double>> m(total_disturbances(), std::vector<double>(total_outputs(), 0.0));
    for (const auto& c : couplings_) {
        m[c.row][c.col] = c.value;
    }
    return m;
}

WellPosedness check_well_posed(const Network& net, double tol) {
    WellPosedness out;
    std::vector<Interval> y;
    for (const auto& s : net.subsystems()) {
        const auto X = s.state_box();
        for (const auto& h : s.output()) {
            y.push_back(poly::interval_bound(h, X));
        }
    }
    out.disturbance_image.assign(net.total_disturbances(), Interval{0.0, 0.0});
    for (const auto& c : net.interconnection()) {
        out.disturbance_image[c.row] = out.disturbance_image[c.row] + c.value * y[c.col];
    }
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& s = net.subsystem(i);
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < s.dims().disturbance; ++k) {
            const auto& img = out.disturbance_image[net.disturbance_offset(i) + k];
            const auto& W = s.regions().W[k];
            const double slack = std::min(img.lo - W.lo, W.hi - img.hi);
            const double scale = std::max({1.0, std::abs(W.lo), std::abs(W.hi)});
            margin = std::min(margin, slack);
            if (slack < -tol * scale) {
                out.well_posed = false;
            }
        }
        out.margin.push_back(margin);
    }
    return out;
}

}  // namespace stochcert::model
