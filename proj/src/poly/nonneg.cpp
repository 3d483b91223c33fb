// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/poly/nonneg.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace stochcert::poly {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::proved: return "proved";
    case Verdict::counterexample: return "counterexample";
    case Verdict::unknown: return "unknown";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
    std::vector<Interval> box;
    double lb;
    std::uint64_t seq;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.lb != b.lb) {
            return a.lb > b.lb;
        }
        return a.seq > b.seq;
    }
};

class BoxSearch {
public:
    BoxSearch(const CompiledPoly& cp, const Box& root, std::size_t space_dim, double tol,
              const ProofBudget& budget)
        : cp_(cp), root_(root), space_dim_(space_dim), tol_(tol), budget_(budget) {
        for (const auto& iv : root.bounds) {
            root_width_.push_back(iv.width());
        }
        local_.resize(root.dim());
        out_.min_sampled = kInf;
    }

    NonnegOutcome run() {
        const std::size_t d = root_.dim();
        // Corners and centre of the starting box first.
        if (d <= 12) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
                for (std::size_t i = 0; i < d; ++i) {
                    local_[i] = (mask >> i) & 1u ? root_.bounds[i].hi : root_.bounds[i].lo;
                }
                if (sample()) {
                    return finish_counterexample();
                }
            }
        }

        Node root{root_.bounds, cp_.bound(root_.bounds).lo, seq_++};
        out_.leaves = 1;
        std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
        if (root.lb >= -tol_) {
            closed_lb_ = root.lb;
        } else {
            open.push(std::move(root));
        }

        std::vector<Node> unresolved;
        while (!open.empty()) {
            Node node = open.top();
            open.pop();
            for (std::size_t i = 0; i < d; ++i) {
                local_[i] = node.box[i].mid();
            }
            if (sample()) {
                return finish_counterexample();
            }
            // Minima of tight residuals often sit on the boundary.
            if (d <= 4) {
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
                    for (std::size_t i = 0; i < d; ++i) {
                        local_[i] = (mask >> i) & 1u ? node.box[i].hi : node.box[i].lo;
                    }
                    if (sample()) {
                        return finish_counterexample();
                    }
                }
            }
            const std::size_t split = widest(node.box);
            if (split == d || out_.leaves + 1 > budget_.max_leaves) {
                unresolved.push_back(std::move(node));
                if (out_.leaves + 1 > budget_.max_leaves) {
                    while (!open.empty()) {
                        unresolved.push_back(open.top());
                        open.pop();
                    }
                }
                continue;
            }
            const double m = node.box[split].mid();
            Node left{node.box, 0.0, seq_++};
            Node right{std::move(node.box), 0.0, seq_++};
            left.box[split].hi = m;
            right.box[split].lo = m;
            ++out_.leaves;
            for (Node* child : {&left, &right}) {
                child->lb = cp_.bound(child->box).lo;
                if (child->lb >= -tol_) {
                    closed_lb_ = std::min(closed_lb_, child->lb);
                } else {
                    open.push(std::move(*child));
                }
            }
        }

        if (unresolved.empty()) {
            out_.verdict = Verdict::proved;
            out_.bound = closed_lb_;
            return out_;
        }
        out_.verdict = Verdict::unknown;
        out_.bound = kInf;
        out_.remaining_volume = 0.0;
        for (const auto& n : unresolved) {
            out_.bound = std::min(out_.bound, n.lb);
            double vol = 1.0;
            for (const auto& iv : n.box) {
                vol *= iv.width();
            }
            out_.remaining_volume += vol;
        }
        return out_;
    }

private:
    std::size_t widest(const std::vector<Interval>& box) const {
        std::size_t best = box.size();
        double best_rel = budget_.min_rel_width;
        for (std::size_t i = 0; i < box.size(); ++i) {
            if (root_width_[i] <= 0.0) {
                continue;
            }
            const double rel = box[i].width() / root_width_[i];
            if (rel > best_rel) {
                best_rel = rel;
                best = i;
            }
        }
        return best;
    }

    // Evaluates at local_; true when the value is a counterexample.
    bool sample() {
        const double v = cp_.eval_local(local_);
        if (v < out_.min_sampled) {
            out_.min_sampled = v;
            out_.min_sampled_point = to_full(local_);
        }
        return v < -tol_;
    }

    NonnegOutcome finish_counterexample() {
        out_.verdict = Verdict::counterexample;
        out_.point = out_.min_sampled_point;
        out_.value = out_.min_sampled;
        out_.bound = out_.value;
        return out_;
    }

    std::vector<double> to_full(const std::vector<double>& local) const {
        std::vector<double> full(space_dim_, 0.0);
        for (std::size_t i = 0; i < root_.dim(); ++i) {
            full[root_.vars[i]] = local[i];
        }
        return full;
    }

    const CompiledPoly& cp_;
    const Box& root_;
    std::size_t space_dim_;
    double tol_;
    ProofBudget budget_;
    std::vector<double> root_width_;
    std::vector<double> local_;
    std::uint64_t seq_ = 0;
    double closed_lb_ = kInf;
    NonnegOutcome out_;
};

}  // namespace

NonnegOutcome prove_nonneg(const Polynomial& p, const Region& region, double tol,
                           const ProofBudget& budget) {
    if (region.empty()) {
        throw std::invalid_argument("prove_nonneg over an empty region");
    }
    if (tol < 0.0) {
        throw std::invalid_argument("negative tolerance");
    }
    const std::size_t n = p.space()->size();
    NonnegOutcome merged;
    merged.verdict = Verdict::proved;
    merged.bound = kInf;
    merged.min_sampled = kInf;
    bool any_unknown = false;
    double unknown_bound = kInf;
    for (const auto& box : region.boxes) {
        CompiledPoly cp(p, box.vars);
        auto res = BoxSearch(cp, box, n, tol, budget).run();
        merged.leaves += res.leaves;
        if (res.min_sampled < merged.min_sampled) {
            merged.min_sampled = res.min_sampled;
            merged.min_sampled_point = res.min_sampled_point;
        }
        switch (res.verdict) {
        case Verdict::counterexample:
            res.leaves = merged.leaves;
            res.min_sampled = merged.min_sampled;
            res.min_sampled_point = merged.min_sampled_point;
            return res;
        case Verdict::unknown:
            any_unknown = true;
            unknown_bound = std::min(unknown_bound, res.bound);
            merged.remaining_volume += res.remaining_volume;
            break;
        case Verdict::proved:
            merged.bound = std::min(merged.bound, res.bound);
            break;
        }
    }
    if (any_unknown) {
        merged.verdict = Verdict::unknown;
        merged.bound = unknown_bound;
    }
    return merged;
}

}  // namespace stochcert::poly
