// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/synth/cegis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace stochcert::synth {

using certify::ModeCertificate;
using poly::Region;
using poly::Verdict;

std::vector<std::vector<double>>& SampleSet::of(Condition c) {
    switch (c) {
    case Condition::init: return init;
    case Condition::unsafe: return unsafe;
    case Condition::nonneg: return nonneg;
    case Condition::drift: return drift;
    }
    return drift;
}

SampleSet SampleSet::initial(const Subsystem& sub, std::size_t per_region, std::uint64_t seed) {
    const std::size_t dim = sub.space()->size();
    auto take = [&](const Region& r, std::uint64_t s) {
        if (r.empty()) {
            return std::vector<std::vector<double>>{};
        }
        std::size_t corners = 0;
        for (const auto& b : r.boxes) {
            corners += std::size_t{1} << std::min<std::size_t>(b.dim(), 12);
        }
        return certify::sample_region(r, dim, corners + per_region, s);
    };
    SampleSet out;
    out.init = take(Region(sub.init_box()), seed);
    out.unsafe = take(sub.unsafe_region(), seed + 1);
    out.nonneg = take(Region(sub.state_box()), seed + 2);
    out.drift = take(Region(sub.state_disturbance_box()), seed + 3);
    return out;
}

namespace {

/// E[b_j(f_p^cl)] per mode and basis element.
std::vector<std::vector<Polynomial>> expected_basis(const Subsystem& sub, const std::vector<Polynomial>& basis,
                                                   const ControllerParams& ctrl) {
    std::vector<std::vector<Polynomial>> out(sub.mode_count());
    for (std::size_t p = 0; p < sub.mode_count(); ++p) {
        std::map<std::size_t, Polynomial> bind;
        const auto nu = ctrl.polynomials(sub, p);
        for (std::size_t j = 0; j < sub.input_vars().size(); ++j) {
            bind.emplace(sub.input_vars()[j], nu[j]);
        }
        std::map<std::size_t, Polynomial> next;
        for (std::size_t k = 0; k < sub.state_vars().size(); ++k) {
            const auto& f = sub.mode(p).dynamics[k];
            next.emplace(sub.state_vars()[k], bind.empty() ? f : f.substitute(bind));
        }
        for (const auto& b : basis) {
            out[p].push_back(poly::gaussian_expectation(b.substitute(next), sub.noise_vars()));
        }
    }
    return out;
}

Polynomial supply_poly(const Subsystem& sub, const SupplyMatrix& X) {
    std::vector<Polynomial> w;
    for (auto v : sub.disturbance_vars()) {
        w.push_back(Polynomial::variable(sub.space(), v));
    }
    if (w.empty() && sub.output().empty()) {
        return Polynomial::constant(sub.space(), 0.0);
    }
    return X.quadratic_form(w, sub.output());
}

bool boxes_meet(const std::vector<poly::Interval>& a, const std::vector<poly::Interval>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].hi < b[k].lo || b[k].hi < a[k].lo) {
            return false;
        }
    }
    return true;
}

}  // namespace

CandidateLp build_candidate_lp(const Subsystem& sub, const Template& tmpl, double kappa, const SupplyMatrix& X,
                               const ControllerParams& ctrl, const SampleSet& samples, const SynthOptions& opt) {
    const auto basis = certificate_basis(sub, tmpl.degree);
    const auto ebasis = expected_basis(sub, basis, ctrl);
    const Polynomial supply = supply_poly(sub, X);
    CandidateLp c;
    c.basis_size = basis.size();
    c.modes = sub.mode_count();
    auto& lp = c.lp;
    for (std::size_t p = 0; p < c.modes; ++p) {
        for (std::size_t j = 0; j < c.basis_size; ++j) {
            lp.add_var("c" + std::to_string(p) + "_" + std::to_string(j), -tmpl.coeff_bound, tmpl.coeff_bound);
        }
    }
    for (std::size_t p = 0; p < c.modes; ++p) {
        const std::string s = std::to_string(p);
        lp.add_var("gamma" + s, 0.0, tmpl.gamma_max, -1.0);
        lp.add_var("lambda" + s, 0.0, tmpl.lambda_max, 1.0);
        lp.add_var("psi" + s, 0.0, tmpl.psi_max, -opt.psi_weight);
    }
    const std::size_t t = lp.add_var("margin", -kInf, opt.margin, opt.margin_weight);

    auto bvals = [&](const std::vector<double>& pt) {
        std::vector<double> v;
        for (const auto& b : basis) {
            v.push_back(b.eval(pt));
        }
        return v;
    };
    auto weight = [](const std::vector<std::pair<std::size_t, double>>& row) {
        double w = 1.0;
        for (const auto& [j, a] : row) {
            w += std::abs(a);
        }
        return w;
    };
    // Rows are written as  sum a x + t * weight <= rhs.
    auto emit = [&](std::vector<std::pair<std::size_t, double>> cert_part,
                    std::vector<std::pair<std::size_t, double>> consts, double rhs) {
        const double w = weight(cert_part);
        cert_part.insert(cert_part.end(), consts.begin(), consts.end());
        cert_part.emplace_back(t, w);
        lp.add_le(std::move(cert_part), rhs);
    };

    for (std::size_t p = 0; p < c.modes; ++p) {
        for (const auto& pt : samples.init) {
            const auto b = bvals(pt);
            std::vector<std::pair<std::size_t, double>> row;
            for (std::size_t j = 0; j < b.size(); ++j) {
                row.emplace_back(c.coeff(p, j), b[j]);
            }
            emit(std::move(row), {{c.gamma(p), -1.0}}, 0.0);
        }
        for (const auto& pt : samples.unsafe) {
            const auto b = bvals(pt);
            std::vector<std::pair<std::size_t, double>> row;
            for (std::size_t j = 0; j < b.size(); ++j) {
                row.emplace_back(c.coeff(p, j), -b[j]);
            }
            emit(std::move(row), {{c.lambda(p), 1.0}}, 0.0);
        }
        for (const auto& pt : samples.nonneg) {
            const auto b = bvals(pt);
            std::vector<std::pair<std::size_t, double>> row;
            for (std::size_t j = 0; j < b.size(); ++j) {
                row.emplace_back(c.coeff(p, j), -b[j]);
            }
            emit(std::move(row), {}, 0.0);
        }
        for (const auto& pt : samples.drift) {
            const auto b = bvals(pt);
            std::vector<double> e;
            for (const auto& ej : ebasis[p]) {
                e.push_back(ej.eval(pt));
            }
            std::map<std::size_t, double> acc;
            for (std::size_t q = 0; q < c.modes; ++q) {
                const double pi = sub.chain()(p, q);
                if (pi == 0.0) {
                    continue;
                }
                for (std::size_t j = 0; j < e.size(); ++j) {
                    acc[c.coeff(q, j)] += pi * e[j];
                }
            }
            for (std::size_t j = 0; j < b.size(); ++j) {
                acc[c.coeff(p, j)] -= kappa * b[j];
            }
            emit({acc.begin(), acc.end()}, {{c.psi(p), -1.0}}, supply.eval(pt));
        }
        lp.add_le({{c.gamma(p), 1.0}, {c.lambda(p), -1.0}}, -opt.gap);
    }
    return c;
}

StorageCertificate decode_candidate(const Subsystem& sub, const Template& tmpl, const CandidateLp& clp,
                                    const LpResult& res, double kappa, const SupplyMatrix& X,
                                    const ControllerParams& ctrl) {
    const auto basis = certificate_basis(sub, tmpl.degree);
    std::vector<ModeCertificate> modes;
    for (std::size_t p = 0; p < clp.modes; ++p) {
        Polynomial B = Polynomial::constant(sub.space(), 0.0);
        for (std::size_t j = 0; j < clp.basis_size; ++j) {
            B = B + res.x[clp.coeff(p, j)] * basis[j];
        }
        modes.push_back({B, kappa, std::max(0.0, res.x[clp.gamma(p)]), std::max(0.0, res.x[clp.lambda(p)]),
                         std::max(0.0, res.x[clp.psi(p)]), ctrl.polynomials(sub, p)});
    }
    return StorageCertificate(std::move(modes), X);
}

namespace {

class Search {
public:
    Search(const Subsystem& sub, const Template& tmpl, const SynthOptions& opt, SynthesisResult& out)
        : sub_(sub), tmpl_(tmpl), opt_(opt), out_(out), start_(std::chrono::steady_clock::now()) {}

    bool out_of_time() const {
        return opt_.time_limit > 0.0 &&
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > opt_.time_limit;
    }

    /// LP objective for a controller, or -inf when the LP has no optimum.
    double score(double kappa, const SupplyMatrix& X, const ControllerParams& ctrl, const SampleSet& s,
                 const SynthOptions& o) {
        ++out_.lp_solves;
        try {
            const auto clp = build_candidate_lp(sub_, tmpl_, kappa, X, ctrl, s, o);
            const auto res = lp_solve(clp.lp);
            return res.status == LpStatus::optimal ? res.value : -kInf;
        } catch (const SolverFailure&) {
            return -kInf;
        }
    }

    ControllerParams descend(double kappa, const SupplyMatrix& X, ControllerParams ctrl, const SampleSet& s,
                             const SynthOptions& o, std::size_t sweeps) {
        const auto bounds = ControllerParams::bounds(sub_, tmpl_.gain_bound);
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double best = score(kappa, X, ctrl, s, o);
        for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
            for (std::size_t p = 0; p < ctrl.per_mode.size(); ++p) {
                for (std::size_t i = 0; i < bounds.size(); ++i) {
                    auto eval = [&](double v) {
                        auto c = ctrl;
                        c.per_mode[p][i] = v;
                        return score(kappa, X, c, s, o);
                    };
                    double lo = bounds[i].first, hi = bounds[i].second;
                    if (!(hi > lo)) {
                        continue;
                    }
                    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
                    double f1 = eval(x1), f2 = eval(x2);
                    double arg = ctrl.per_mode[p][i], val = best;
                    auto keep = [&](double x, double f) {
                        if (f > val) {
                            val = f;
                            arg = x;
                        }
                    };
                    keep(x1, f1);
                    keep(x2, f2);
                    for (std::size_t it = 0; it < opt_.golden_iterations; ++it) {
                        if (f1 >= f2) {
                            hi = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = hi - phi * (hi - lo);
                            f1 = eval(x1);
                            keep(x1, f1);
                        } else {
                            lo = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = lo + phi * (hi - lo);
                            f2 = eval(x2);
                            keep(x2, f2);
                        }
                    }
                    ctrl.per_mode[p][i] = arg;
                    best = val;
                }
            }
        }
        return ctrl;
    }

    /// Samples each residual of `cand` and returns the worst violations.
    std::size_t screen(const StorageCertificate& cand, SampleSet& s, std::size_t round) {
        std::size_t added = 0;
        const std::size_t dim = sub_.space()->size();
        for (std::size_t p = 0; p < sub_.mode_count(); ++p) {
            for (const auto& r : certify::csc_residuals(sub_, cand, p)) {
                if (r.region.empty()) {
                    continue;
                }
                const auto pts = certify::sample_region(r.region, dim, opt_.screen_samples,
                                                        opt_.seed * 7919 + round * 131 + p * 17 +
                                                            static_cast<std::uint64_t>(r.condition));
                std::vector<std::pair<double, std::size_t>> bad;
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    const double v = r.poly.eval(pts[k]);
                    if (v < 0.0) {
                        bad.emplace_back(v, k);
                    }
                }
                std::sort(bad.begin(), bad.end());
                for (std::size_t k = 0; k < std::min(bad.size(), opt_.points_per_round); ++k) {
                    s.of(r.condition).push_back(pts[bad[k].second]);
                    if (k == 0) {
                        out_.history.push_back({round, p, r.condition, pts[bad[k].second], bad[k].first, "screen"});
                    }
                    ++added;
                }
            }
        }
        return added;
    }

    bool run_cell(double kappa, std::size_t xi, const SupplyMatrix& X, const SampleSet& base) {
        SampleSet samples = base;
        SynthOptions o = opt_;
        ControllerParams ctrl =
            opt_.initial_controller ? *opt_.initial_controller : ControllerParams::initial(sub_);
        std::ostringstream tag;
        tag << "kappa=" << kappa << " supply#" << xi;
        for (std::size_t round = 0; round < opt_.max_rounds; ++round) {
            if (out_of_time()) {
                out_.diagnostics.push_back(tag.str() + ": time limit reached");
                return false;
            }
            ++out_.rounds;
            if (!opt_.fixed_controller) {
                ctrl = descend(kappa, X, ctrl, samples, o, round == 0 ? opt_.controller_sweeps : 1);
            }
            ++out_.lp_solves;
            CandidateLp clp = build_candidate_lp(sub_, tmpl_, kappa, X, ctrl, samples, o);
            LpResult res;
            try {
                res = lp_solve(clp.lp);
            } catch (const SolverFailure& e) {
                out_.diagnostics.push_back(tag.str() + ": " + e.what());
                return false;
            }
            if (res.status != LpStatus::optimal) {
                out_.diagnostics.push_back(tag.str() + ": sampled LP " + lp_status_name(res.status));
                return false;
            }
            const double t = res.x[clp.margin()];
            out_.best_margin = std::max(out_.best_margin, t);
            if (!(t > 0.0)) {
                std::ostringstream m;
                m << tag.str() << ": no positive margin on " << samples.size() << " samples (best " << t << ")";
                out_.diagnostics.push_back(m.str());
                return false;
            }
            const auto cand = decode_candidate(sub_, tmpl_, clp, res, kappa, X, ctrl);
            if (screen(cand, samples, round) > 0) {
                continue;
            }
            auto report = certify::verify_csc(sub_, cand, opt_.verify);
            out_.last_candidate = cand;
            if (report.verdict() == Verdict::proved) {
                out_.proved = true;
                out_.certificate = cand;
                out_.report = std::move(report);
                out_.kappa = kappa;
                out_.supply_index = xi;
                out_.controller = ctrl;
                return true;
            }
            bool stuck = false;
            for (const auto& e : report.entries) {
                if (e.outcome.verdict == Verdict::counterexample) {
                    samples.of(e.condition).push_back(e.outcome.point);
                    out_.history.push_back({round, e.mode, e.condition, e.outcome.point, e.outcome.value, "prover"});
                } else if (e.outcome.verdict == Verdict::unknown) {
                    samples.of(e.condition).push_back(e.outcome.min_sampled_point);
                    out_.history.push_back(
                        {round, e.mode, e.condition, e.outcome.min_sampled_point, e.outcome.min_sampled, "prover"});
                    stuck = stuck || e.outcome.min_sampled >= 0.0;
                }
            }
            if (stuck) {
                // The prover ran out of budget on a residual that samples as
                // nonnegative: ask for more slack.
                o.margin *= 2.0;
            }
            out_.report = std::move(report);
        }
        out_.diagnostics.push_back(tag.str() + ": round limit reached");
        return false;
    }

private:
    const Subsystem& sub_;
    const Template& tmpl_;
    const SynthOptions& opt_;
    SynthesisResult& out_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

SynthesisResult synthesize_csc(const Subsystem& sub, const Template& tmpl, const SynthOptions& opt) {
    tmpl.validate(sub);
    SynthesisResult out;
    out.controller = opt.initial_controller ? *opt.initial_controller : ControllerParams::initial(sub);
    for (const auto& u : sub.regions().Xu) {
        if (boxes_meet(sub.regions().X0, u)) {
            out.diagnostics.push_back("gamma < lambda unsatisfiable on overlap of X0 and Xu");
            return out;
        }
    }
    std::vector<SupplyMatrix> supplies = tmpl.supply_candidates;
    if (supplies.empty()) {
        supplies.push_back(zero_supply(sub));
    }
    std::vector<double> kappas = tmpl.kappa_grid;
    std::sort(kappas.begin(), kappas.end());
    const SampleSet base = SampleSet::initial(sub, opt.samples_per_region, opt.seed);
    Search search(sub, tmpl, opt, out);
    for (double kappa : kappas) {
        for (std::size_t xi = 0; xi < supplies.size(); ++xi) {
            if (search.run_cell(kappa, xi, supplies[xi], base)) {
                return out;
            }
            if (search.out_of_time()) {
                return out;
            }
        }
    }
    return out;
}

}  // namespace stochcert::synth
