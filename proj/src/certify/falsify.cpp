// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <limits>

#include "stochcert/certify/verify.hpp"
#include "stochcert/sim/rng.hpp"

namespace stochcert::certify {

std::vector<std::vector<double>> sample_region(const poly::Region& region, std::size_t space_dim,
                                               std::size_t count, std::uint64_t seed) {
    std::vector<std::vector<double>> pts;
    if (region.empty() || count == 0) {
        return pts;
    }
    pts.reserve(count);
    for (const auto& box : region.boxes) {
        const std::size_t d = box.dim();
        if (d > 12) {
            break;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d) && pts.size() < count; ++mask) {
            std::vector<double> pt(space_dim, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                pt[box.vars[i]] = (mask >> i) & 1u ? box.bounds[i].hi : box.bounds[i].lo;
            }
            pts.push_back(std::move(pt));
        }
    }
    const std::size_t rest = count - pts.size();
    std::vector<double> vol;
    double total = 0.0;
    for (const auto& box : region.boxes) {
        vol.push_back(box.volume());
        total += vol.back();
    }
    std::vector<std::size_t> share(region.boxes.size(), 0);
    std::size_t given = 0;
    for (std::size_t b = 0; b < share.size(); ++b) {
        const double frac = total > 0.0 ? vol[b] / total : 1.0 / static_cast<double>(share.size());
        share[b] = static_cast<std::size_t>(static_cast<double>(rest) * frac);
        given += share[b];
    }
    for (std::size_t b = 0; given < rest; b = (b + 1) % share.size(), ++given) {
        ++share[b];
    }
    sim::Xoshiro256 rng(seed);
    for (std::size_t b = 0; b < share.size(); ++b) {
        const auto& box = region.boxes[b];
        for (std::size_t s = 0; s < share[b]; ++s) {
            std::vector<double> pt(space_dim, 0.0);
            for (std::size_t i = 0; i < box.dim(); ++i) {
                pt[box.vars[i]] = rng.uniform(box.bounds[i].lo, box.bounds[i].hi);
            }
            // Every fourth point lies on a random face.
            if (s % 4 == 3 && box.dim() > 0) {
                const std::size_t i = rng() % box.dim();
                pt[box.vars[i]] = rng() & 1u ? box.bounds[i].hi : box.bounds[i].lo;
            }
            pts.push_back(std::move(pt));
        }
    }
    return pts;
}

FalsifyResult falsify(const Subsystem& sub, const StorageCertificate& csc, std::size_t sample_count,
                      std::uint64_t seed, double tol, const std::vector<Condition>& conditions) {
    if (sample_count == 0) {
        throw std::invalid_argument("falsify needs at least one sample");
    }
    csc.check_compatible(sub);
    FalsifyResult out;
    for (std::size_t p = 0; p < sub.mode_count(); ++p) {
        for (const auto& r : csc_residuals(sub, csc, p)) {
            if (std::find(conditions.begin(), conditions.end(), r.condition) == conditions.end() ||
                r.region.empty()) {
                continue;
            }
            // Every residual shares one sample stream so results do not depend
            // on which conditions were selected.
            const auto pts = sample_region(r.region, sub.space()->size(), sample_count, seed);
            SampleMin m{p, r.condition, std::numeric_limits<double>::infinity(), {}, pts.size()};
            for (const auto& pt : pts) {
                const double v = r.poly.eval(pt);
                if (v < m.min_value) {
                    m.min_value = v;
                    m.point = pt;
                }
            }
            if (m.min_value < -tol && (!out.counterexample || m.min_value < out.counterexample->min_value)) {
                out.counterexample = m;
            }
            out.minima.push_back(std::move(m));
        }
    }
    return out;
}

}  // namespace stochcert::certify
