// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/sim/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stochcert/certify/parallel.hpp"
#include "stochcert/sim/rng.hpp"

namespace stochcert::sim {

using poly::CompiledPoly;
using poly::Interval;

Controllers controllers_from(const std::vector<certify::StorageCertificate>& certs) {
    Controllers out;
    for (const auto& c : certs) {
        std::vector<std::vector<Polynomial>> modes;
        for (const auto& m : c.modes()) {
            modes.push_back(m.controller);
        }
        out.push_back(std::move(modes));
    }
    return out;
}

namespace {

struct CompiledSub {
    std::vector<std::vector<CompiledPoly>> f;     // [mode][state]
    std::vector<std::vector<CompiledPoly>> ctrl;  // [mode][input]
    std::vector<CompiledPoly> h;
    std::vector<std::vector<double>> cumulative;  // transition CDF rows
    std::vector<double> stationary_cdf;
};

std::vector<double> cdf(const std::vector<double>& w) {
    std::vector<double> c(w.size());
    std::partial_sum(w.begin(), w.end(), c.begin());
    c.back() = 1.0;
    return c;
}

std::size_t draw(const std::vector<double>& cdf, double u) {
    return static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

class Runner {
public:
    Runner(const Network& net, const Controllers& controllers, const SimConfig& cfg)
        : net_(net), cfg_(cfg), coupling_(cfg.coupling.value_or(net.coupling())) {
        if (cfg.trials == 0 || cfg.horizon == 0) {
            throw std::invalid_argument("trials and horizon must be at least 1");
        }
        if (controllers.size() != net.size()) {
            throw std::invalid_argument("controllers given for " + std::to_string(controllers.size()) +
                                        " subsystems, network has " + std::to_string(net.size()));
        }
        std::size_t total_states = 0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            const auto& sub = net.subsystem(i);
            total_states += sub.dims().state;
            if (controllers[i].size() != sub.mode_count()) {
                throw std::invalid_argument("subsystem " + std::to_string(i) + ": controller missing for mode " +
                                            std::to_string(controllers[i].size()));
            }
            std::vector<std::size_t> all(sub.space()->size());
            std::iota(all.begin(), all.end(), 0);
            CompiledSub cs;
            for (std::size_t p = 0; p < sub.mode_count(); ++p) {
                if (controllers[i][p].size() != sub.dims().input) {
                    throw std::invalid_argument("subsystem " + std::to_string(i) + " mode " + std::to_string(p) +
                                                ": expected " + std::to_string(sub.dims().input) + " controllers");
                }
                std::vector<CompiledPoly> f, c;
                for (const auto& fk : sub.mode(p).dynamics) {
                    f.emplace_back(fk, all);
                }
                for (const auto& cj : controllers[i][p]) {
                    if (!poly::same_space(cj.space(), sub.space())) {
                        throw std::invalid_argument("controller of subsystem " + std::to_string(i) +
                                                    " uses a different variable space");
                    }
                    c.emplace_back(cj, all);
                }
                cs.f.push_back(std::move(f));
                cs.ctrl.push_back(std::move(c));
                cs.cumulative.push_back(cdf(sub.chain().row(p)));
            }
            for (const auto& hk : sub.output()) {
                cs.h.emplace_back(hk, all);
            }
            if (!cfg.initial_mode) {
                cs.stationary_cdf = cdf(sub.chain().stationary());
            } else if (*cfg.initial_mode >= sub.mode_count()) {
                throw std::invalid_argument("initial mode out of range");
            }
            subs_.push_back(std::move(cs));
        }
        if (cfg.init == InitPolicy::fixed && cfg.fixed_state.size() != total_states) {
            throw std::invalid_argument("fixed initial state has " + std::to_string(cfg.fixed_state.size()) +
                                        " entries, network has " + std::to_string(total_states) + " states");
        }
        if (cfg.record) {
            tracked_ = cfg.tracked;
            if (tracked_.empty()) {
                tracked_.resize(net.size());
                std::iota(tracked_.begin(), tracked_.end(), 0);
            }
            for (auto i : tracked_) {
                if (i >= net.size()) {
                    throw std::invalid_argument("tracked subsystem " + std::to_string(i) + " out of range");
                }
            }
        }
    }

    TrialResult trial(std::size_t t) const {
        Xoshiro256 rng(child_seed(cfg_.seed, t));
        const std::size_t n = net_.size();
        std::vector<std::vector<double>> pt(n);
        std::vector<std::size_t> mode(n);
        std::size_t fixed_pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& sub = net_.subsystem(i);
            pt[i].assign(sub.space()->size(), 0.0);
            for (std::size_t k = 0; k < sub.dims().state; ++k) {
                const auto& iv = sub.regions().X0[k];
                pt[i][sub.state_vars()[k]] =
                    cfg_.init == InitPolicy::fixed ? cfg_.fixed_state[fixed_pos++] : rng.uniform(iv.lo, iv.hi);
            }
        }
        const bool shared = coupling_ == model::ModeCoupling::shared;
        for (std::size_t i = 0; i < n; ++i) {
            if (cfg_.initial_mode) {
                mode[i] = *cfg_.initial_mode;
            } else if (!shared || i == 0) {
                mode[i] = draw(subs_[i].stationary_cdf, rng.uniform());
            } else {
                mode[i] = mode[0];
            }
        }

        TrialResult out;
        for (auto i : tracked_) {
            out.traces.push_back({i, {}, {}});
        }
        std::vector<double> y(net_.total_outputs()), w(net_.total_disturbances());
        std::vector<double> next;
        for (std::size_t k = 0;; ++k) {
            for (std::size_t r = 0; r < tracked_.size(); ++r) {
                const auto& sub = net_.subsystem(tracked_[r]);
                auto& tr = out.traces[r];
                tr.modes.push_back(mode[tracked_[r]]);
                std::vector<double> x;
                for (auto v : sub.state_vars()) {
                    x.push_back(pt[tracked_[r]][v]);
                }
                tr.states.push_back(std::move(x));
            }
            if (!out.unsafe && violated(pt)) {
                out.unsafe = true;
                out.first_violation = k;
                if (tracked_.empty()) {
                    break;
                }
            }
            if (k == cfg_.horizon) {
                break;
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < subs_[i].h.size(); ++j) {
                    y[net_.output_offset(i) + j] = subs_[i].h[j].eval_local(pt[i]);
                }
            }
            std::fill(w.begin(), w.end(), 0.0);
            for (const auto& c : net_.interconnection()) {
                w[c.row] += c.value * y[c.col];
            }
            for (std::size_t i = 0; i < n; ++i) {
                const auto& sub = net_.subsystem(i);
                auto& x = pt[i];
                const std::size_t p = mode[i];
                for (std::size_t j = 0; j < sub.dims().input; ++j) {
                    double v = subs_[i].ctrl[p][j].eval_local(x);
                    if (cfg_.clamp) {
                        const auto& U = sub.regions().U[j];
                        if (v < U.lo || v > U.hi) {
                            v = std::clamp(v, U.lo, U.hi);
                            ++out.clamp_events;
                        }
                    }
                    x[sub.input_vars()[j]] = v;
                }
                for (std::size_t j = 0; j < sub.dims().disturbance; ++j) {
                    x[sub.disturbance_vars()[j]] = w[net_.disturbance_offset(i) + j];
                }
                for (auto v : sub.noise_vars()) {
                    x[v] = rng.normal();
                }
                next.resize(sub.dims().state);
                for (std::size_t s = 0; s < next.size(); ++s) {
                    next[s] = subs_[i].f[p][s].eval_local(x);
                }
                for (std::size_t s = 0; s < next.size(); ++s) {
                    x[sub.state_vars()[s]] = next[s];
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (!shared || i == 0) {
                    mode[i] = draw(subs_[i].cumulative[mode[i]], rng.uniform());
                } else {
                    mode[i] = mode[0];
                }
            }
        }
        return out;
    }

    model::ModeCoupling coupling() const { return coupling_; }

private:
    bool violated(const std::vector<std::vector<double>>& pt) const {
        auto inside = [](const std::vector<Interval>& box, const std::vector<std::size_t>& vars,
                         const std::vector<double>& x) {
            for (std::size_t k = 0; k < vars.size(); ++k) {
                if (!box[k].contains(x[vars[k]])) {
                    return false;
                }
            }
            return true;
        };
        for (std::size_t i = 0; i < net_.size(); ++i) {
            const auto& sub = net_.subsystem(i);
            const auto& R = sub.regions();
            if (!inside(R.X, sub.state_vars(), pt[i])) {
                return true;
            }
            for (const auto& u : R.Xu) {
                if (inside(u, sub.state_vars(), pt[i])) {
                    return true;
                }
            }
        }
        return false;
    }

    const Network& net_;
    const SimConfig& cfg_;
    model::ModeCoupling coupling_;
    std::vector<CompiledSub> subs_;
    std::vector<std::size_t> tracked_;
};

}  // namespace

SimResult simulate(const Network& net, const Controllers& controllers, const SimConfig& cfg) {
    Runner runner(net, controllers, cfg);
    SimResult out;
    out.trials.resize(cfg.trials);
    certify::parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) { out.trials[t] = runner.trial(t); });
    auto& s = out.summary;
    s.trials = cfg.trials;
    s.coupling = runner.coupling();
    for (const auto& t : out.trials) {
        s.violations += t.unsafe ? 1 : 0;
        s.clamp_events += t.clamp_events;
    }
    s.p_hat = static_cast<double>(s.violations) / static_cast<double>(s.trials);
    s.ci = clopper_pearson(s.violations, s.trials);
    return out;
}

SimSummary estimate_violation(const Network& net, const Controllers& controllers, SimConfig cfg) {
    cfg.record = false;
    return simulate(net, controllers, cfg).summary;
}

std::string trajectories_csv(const SimResult& result, const std::vector<std::string>& header_lines) {
    std::size_t width = 0;
    for (const auto& t : result.trials) {
        if (t.traces.empty()) {
            throw std::invalid_argument("trajectory recording was disabled");
        }
        for (const auto& tr : t.traces) {
            for (const auto& x : tr.states) {
                width = std::max(width, x.size());
            }
        }
    }
    std::ostringstream o;
    for (const auto& h : header_lines) {
        o << "# " << h << "\n";
    }
    o << "trial,step,subsystem,mode";
    for (std::size_t k = 1; k <= std::max<std::size_t>(width, 1); ++k) {
        o << ",x" << k;
    }
    o << "\n";
    char buf[32];
    for (std::size_t t = 0; t < result.trials.size(); ++t) {
        for (const auto& tr : result.trials[t].traces) {
            for (std::size_t k = 0; k < tr.states.size(); ++k) {
                o << t << ',' << k << ',' << tr.subsystem << ',' << tr.modes[k];
                for (std::size_t c = 0; c < width; ++c) {
                    o << ',';
                    if (c < tr.states[k].size()) {
                        auto r = std::to_chars(buf, buf + sizeof buf, tr.states[k][c]);
                        o.write(buf, r.ptr - buf);
                    }
                }
                o << '\n';
            }
        }
    }
    return o.str();
}

}  // namespace stochcert::sim
