// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "lp_oracle.hpp"
#include "stochcert/bound/safety_bound.hpp"
#include "stochcert/compose/compose.hpp"
#include "stochcert/sim/rng.hpp"
#include "stochcert/sim/simulate.hpp"
#include "stochcert/synth/cegis.hpp"

using namespace stochcert;
using certify::Condition;
using poly::Verdict;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Detail {
public:
    template <class T>
    Detail& operator<<(const T& v) {
        os_ << v;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

const std::vector<double> kRoomMu(200, 1.0);

// --- 1 --------------------------------------------------------------------

Outcome safety_bound_reproduction() {
    using big = boost::multiprecision::cpp_bin_float_50;
    const big ref = 1 - (1 - big(28) / 860) * pow(1 - big("0.3") / 860, 100);
    const auto t0 = Clock::now();
    bound::BoundResult r;
    for (int i = 0; i < 1000; ++i) {
        r = bound::safety_bound({28, 860, 0.92, 0.3, 100});
    }
    const double per_call = seconds_since(t0) / 1000;
    const double want = ref.convert_to<double>();
    const double rel = std::abs(r.delta - want) / want;
    Detail d;
    d << "delta=" << r.delta << " 1-delta=" << 1 - r.delta << " branch=" << r.branch << " rel.err=" << rel
      << " per-call=" << per_call * 1e6 << "us";
    return {r.branch == 1 && rel <= 1e-12 && per_call < 1e-3, d.str()};
}

// --- 2 --------------------------------------------------------------------

Outcome printed_certificate_checks() {
    auto net = model::room_casestudy(200);
    auto cscs = fixtures::room_certificates(net);
    certify::VerifyOptions opt;
    opt.tol = 1e-6;
    opt.conditions = {Condition::init, Condition::unsafe};
    const auto t0 = Clock::now();
    auto rep = certify::verify_csc(net.subsystem(0), cscs[0], opt);
    const double secs = seconds_since(t0);
    const auto& B1 = cscs[0].mode(0).B;
    auto at = [&](double x) { return B1.eval(std::vector<double>{x, 0, 0, 0}); };
    const bool spots = std::abs(at(20) - 0.043) <= 1e-2 && std::abs(at(1) - 5.307) <= 1e-2 &&
                       std::abs(at(17) - 5.97) <= 1e-2;
    Detail d;
    d << "entries=" << rep.entries.size() << " verdict=" << poly::verdict_name(rep.verdict()) << " time=" << secs
      << "s B1(20)=" << at(20) << " B1(1)=" << at(1) << " B1(17)=" << at(17);
    return {rep.entries.size() == 4 && rep.verdict() == Verdict::proved && secs < 10 && spots, d.str()};
}

// --- 3 --------------------------------------------------------------------

// Drift residual of the printed room certificate, evaluated from scratch.
struct RoomDriftOracle {
    double B[2][5] = {{0.00242, -0.091, 0.7696, 1.4935, 3.1329}, {0.00191, -0.0718, 0.5998, 1.2424, 3.2433}};
    double kappa[2] = {0.91, 0.92}, psi[2] = {0.001, 0.0015};
    double gain[2] = {-0.0121, -0.02527}, offset[2] = {0.8, 1.15};
    double To[2] = {-15, -20}, g[2] = {0.3, 0.5};
    double pi[2][2] = {{0.3, 0.7}, {0.4, 0.6}};

    static double quartic(const double* c, double x) { return (((c[0] * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4]; }

    // E[B(m + s Z)], Z standard normal, using E Z^2 = 1, E Z^4 = 3.
    static double expected_quartic(const double* c, double m, double s) {
        const double s2 = s * s, m2 = m * m;
        const double e2 = m2 + s2;
        const double e3 = m2 * m + 3 * m * s2;
        const double e4 = m2 * m2 + 6 * m2 * s2 + 3 * s2 * s2;
        return c[0] * e4 + c[1] * e3 + c[2] * e2 + c[3] * m + c[4];
    }

    double operator()(std::size_t p, double x, double w) const {
        const double u = gain[p] * x + offset[p];
        const double mean = (1 - 0.01 - 0.06) * x - 0.145 * u * x + 0.145 * 45 * u + 0.005 * w + 0.06 * To[p];
        double next = 0.0;
        for (int q = 0; q < 2; ++q) {
            next += pi[p][q] * expected_quartic(B[q], mean, g[p]);
        }
        const double supply = 0.005 * w * w + 2 * 0.003 * w * x - 0.035 * x * x;
        return kappa[p] * quartic(B[p], x) + psi[p] + supply - next;
    }
};

Outcome drift_falsification() {
    auto net = model::room_casestudy(200);
    const auto& sub = net.subsystem(0);
    auto cscs = fixtures::room_certificates(net);
    constexpr std::size_t kSamples = 100000;
    constexpr std::uint64_t kSeed = 42;
    auto a = certify::falsify(sub, cscs[0], kSamples, kSeed, 1e-6, {Condition::drift});
    auto b = certify::falsify(sub, cscs[0], kSamples, kSeed, 1e-6, {Condition::drift});
    bool deterministic = a.minima.size() == 2 && b.minima.size() == 2;
    bool agree = deterministic;
    RoomDriftOracle oracle;
    Detail d;
    for (std::size_t p = 0; p < 2 && deterministic; ++p) {
        deterministic = a.minima[p].min_value == b.minima[p].min_value && a.minima[p].point == b.minima[p].point;
        const auto region = certify::csc_residuals(sub, cscs[0], p)[3].region;
        const auto pts = certify::sample_region(region, sub.space()->size(), kSamples, kSeed);
        double best = 1e300;
        for (const auto& pt : pts) {
            best = std::min(best, oracle(p, pt[0], pt[2]));
        }
        const double got = a.minima[p].min_value;
        agree = agree && std::abs(best - got) <= 1e-9 * std::max(1.0, std::abs(best));
        d << "mode" << p << ": min=" << got << " oracle=" << best << " at x=" << a.minima[p].point[0]
          << " w=" << a.minima[p].point[2] << " samples=" << a.minima[p].samples << "; ";
    }
    d << (deterministic ? "deterministic" : "NOT deterministic");
    return {deterministic && agree, d.str()};
}

// --- 4 --------------------------------------------------------------------

Outcome lmi_composition() {
    bool ok = true;
    Detail d;
    for (std::size_t n : {3u, 10u, 200u}) {
        auto net = model::room_casestudy(n);
        auto cscs = fixtures::room_certificates(net);
        auto xcmp = compose::assemble_xcmp(net, cscs, std::vector<double>(n, 1.0));
        auto g = compose::check_dissipativity_lmi(net, xcmp, 1e-9, compose::LmiMethod::gershgorin);
        const auto t0 = Clock::now();
        auto e = compose::check_dissipativity_lmi(net, xcmp, 1e-9, compose::LmiMethod::eigen);
        const double secs = seconds_since(t0);
        ok = ok && g.holds && e.holds && std::abs(g.max_eig - e.max_eig) <= 1e-9 && e.max_eig <= -0.003 + 1e-6 &&
             secs < 30;
        d << "N=" << n << " gershgorin=" << g.max_eig << " eigen=" << e.max_eig << " (S " << e.dim << "x" << e.dim
          << ", " << secs << "s); ";
    }
    return {ok, d.str()};
}

// --- 5 --------------------------------------------------------------------

Outcome composed_constants() {
    auto net = model::room_casestudy(200);
    auto cscs = fixtures::room_certificates(net);
    auto cert = compose::compose_cbc(net, cscs, kRoomMu);
    auto gap = compose::check_level_gap(cscs, kRoomMu);
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
    Detail d;
    d << "gamma=" << cert.gamma() << " lambda=" << cert.lambda() << " kappa=" << cert.kappa() << " psi=" << cert.psi()
      << " gap " << gap.lhs << " > " << gap.rhs;
    const bool pass = close(cert.gamma(), 28) && close(cert.lambda(), 860) && close(cert.kappa(), 0.92) &&
                      close(cert.psi(), 0.3) && gap.holds && close(gap.lhs, 860) && close(gap.rhs, 28);
    return {pass, d.str()};
}

// --- 6 --------------------------------------------------------------------

certify::SupplyMatrix room_supply() { return certify::SupplyMatrix(1, 1, {{0.005, 0.003}, {0.003, -0.035}}); }

Outcome two_room_direct_check() {
    auto net = model::room_casestudy(2);
    synth::Template tmpl;
    tmpl.supply_candidates = {room_supply()};
    auto res = synth::synthesize_csc(net.subsystem(0), tmpl);
    if (!res.proved) {
        return {false, "synthesis for the 2-room subsystem failed"};
    }
    const std::vector<certify::StorageCertificate> cscs(2, *res.certificate);
    const std::vector<double> mu(2, 1.0);
    Detail d;
    try {
        auto cert = compose::compose_cbc(net, cscs, mu);
        const auto t0 = Clock::now();
        auto rep = certify::verify_cbc_direct(net, cert, 1e-5);
        std::size_t proved = 0;
        for (const auto& e : rep.entries) {
            proved += e.outcome.verdict == Verdict::proved;
        }
        d << "composed gamma=" << cert.gamma() << " lambda=" << cert.lambda() << " kappa=" << cert.kappa()
          << " psi=" << cert.psi() << "; direct check " << proved << "/" << rep.entries.size() << " proved in "
          << seconds_since(t0) << "s";
        for (const auto& e : rep.entries) {
            if (e.outcome.verdict != Verdict::proved) {
                d << "; mode " << e.mode << " " << certify::condition_name(e.condition) << " "
                  << poly::verdict_name(e.outcome.verdict) << " bound " << e.outcome.bound;
            }
        }
        return {!rep.entries.empty() && rep.verdict() == Verdict::proved, d.str()};
    } catch (const compose::CompositionRefused& e) {
        return {false, std::string("composition refused: ") + e.what()};
    }
}

// --- 7 --------------------------------------------------------------------

std::optional<certify::StorageCertificate> g_room_certificate;

Outcome room_synthesis() {
    auto net = model::room_casestudy(200);
    synth::Template tmpl;
    tmpl.degree = 4;
    tmpl.supply_candidates = {room_supply()};
    const auto t0 = Clock::now();
    auto res = synth::synthesize_csc(net.subsystem(0), tmpl);
    const double secs = seconds_since(t0);
    bool all = res.proved && !res.report.entries.empty();
    for (const auto& e : res.report.entries) {
        all = all && e.outcome.verdict == Verdict::proved;
    }
    Detail d;
    d << "proved=" << res.proved << " entries=" << res.report.entries.size() << " kappa=" << res.kappa
      << " rounds=" << res.rounds << " lps=" << res.lp_solves << " time=" << secs << "s";
    if (res.certificate) {
        g_room_certificate = res.certificate;
        for (std::size_t p = 0; p < res.certificate->mode_count(); ++p) {
            const auto& m = res.certificate->mode(p);
            d << "; mode" << p << " gamma=" << m.gamma << " lambda=" << m.lambda << " psi=" << m.psi
              << " u=" << m.controller[0].to_string();
        }
    }
    return {all && secs < 1800, d.str()};
}

// --- 8 --------------------------------------------------------------------

Outcome monte_carlo_vs_bound() {
    if (!g_room_certificate) {
        return {false, "no controllers: criterion 7 produced no certificate"};
    }
    auto net = model::room_casestudy(200);
    const std::vector<certify::StorageCertificate> cscs(200, *g_room_certificate);
    sim::SimConfig cfg;
    cfg.seed = 42;
    cfg.trials = 1000;
    cfg.horizon = 100;
    cfg.record = true;
    cfg.tracked = {0};
    const auto t0 = Clock::now();
    auto res = sim::simulate(net, sim::controllers_from(cscs), cfg);
    const double secs = seconds_since(t0);
    std::size_t inside = 0;
    for (const auto& t : res.trials) {
        bool ok = true;
        for (const auto& x : t.traces.at(0).states) {
            ok = ok && x[0] >= 17.0 && x[0] <= 23.0;
        }
        inside += ok;
    }
    const double delta = bound::safety_bound({28, 860, 0.92, 0.3, 100}).delta;
    const auto& s = res.summary;
    const double frac = static_cast<double>(inside) / s.trials;
    Detail d;
    d << "violations=" << s.violations << "/" << s.trials << " p_hat=" << s.p_hat << " ci=[" << s.ci.lo << ", "
      << s.ci.hi << "] delta=" << delta << " tracked-in-band=" << frac << " clamps=" << s.clamp_events
      << " time=" << secs << "s";
    return {s.p_hat <= delta && s.ci.hi <= 0.10 && frac >= 0.93 && secs < 300, d.str()};
}

// --- 9 --------------------------------------------------------------------

bool expectation_vs_monte_carlo(Detail& d) {
    auto sp = poly::VarSpace::standard(0, 0, 0, 2);
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> c(-1.0, 1.0), c0(2.0, 3.0);
    const std::vector<std::size_t> vars{0, 1};
    const auto monos = poly::monomials_up_to(2, vars, 4);
    std::vector<std::vector<double>> coeffs(20, std::vector<double>(monos.size()));
    std::vector<double> exact(20);
    for (std::size_t k = 0; k < 20; ++k) {
        poly::Polynomial::Terms t;
        for (std::size_t m = 0; m < monos.size(); ++m) {
            coeffs[k][m] = m == 0 ? c0(rng) : c(rng);
            t[monos[m]] = coeffs[k][m];
        }
        exact[k] = poly::gaussian_expectation(poly::Polynomial(sp, t)).constant_term();
    }
    constexpr std::size_t kSamples = 10'000'000;
    sim::Xoshiro256 z(31415);
    std::vector<double> sums(20, 0.0), mono(monos.size());
    for (std::size_t i = 0; i < kSamples; ++i) {
        const double a = z.normal(), b = z.normal();
        const double pa[5] = {1, a, a * a, a * a * a, a * a * a * a};
        const double pb[5] = {1, b, b * b, b * b * b, b * b * b * b};
        for (std::size_t m = 0; m < monos.size(); ++m) {
            mono[m] = pa[monos[m][0]] * pb[monos[m][1]];
        }
        for (std::size_t k = 0; k < 20; ++k) {
            double v = 0.0;
            for (std::size_t m = 0; m < monos.size(); ++m) {
                v += coeffs[k][m] * mono[m];
            }
            sums[k] += v;
        }
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
        worst = std::max(worst, std::abs(sums[k] / kSamples - exact[k]) / std::max(1.0, std::abs(exact[k])));
    }
    d << "expectation worst rel.err=" << worst << "; ";
    return worst <= 1e-2;
}

bool prover_vs_grid(Detail& d) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> c(-1.0, 1.0), lo(-2.0, 1.0), wid(0.2, 2.0);
    std::size_t unsound = 0, proved = 0, refuted = 0, unknown = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = trial % 2 ? 2 : 1;
        auto sp = poly::VarSpace::standard(dim, 0, 0, 0);
        std::vector<std::size_t> vars(dim);
        std::vector<poly::Interval> bounds;
        for (std::size_t k = 0; k < dim; ++k) {
            vars[k] = k;
            const double a = lo(rng);
            bounds.push_back({a, a + wid(rng)});
        }
        poly::Polynomial::Terms t;
        for (const auto& e : poly::monomials_up_to(dim, vars, 4)) {
            t[e] = c(rng);
        }
        poly::Polynomial p(sp, t);
        poly::Box box(vars, bounds);
        auto grid_min = [&](const poly::Polynomial& q) {
            const int n = dim == 1 ? 4000 : 150;
            double best = 1e300;
            std::vector<double> pt(dim);
            for (int i = 0; i <= n; ++i) {
                pt[0] = bounds[0].lo + bounds[0].width() * i / n;
                if (dim == 1) {
                    best = std::min(best, q.eval(pt));
                    continue;
                }
                for (int j = 0; j <= n; ++j) {
                    pt[1] = bounds[1].lo + bounds[1].width() * j / n;
                    best = std::min(best, q.eval(pt));
                }
            }
            return best;
        };
        p = p.add_constant(-grid_min(p) + 0.05 * c(rng));
        poly::ProofBudget budget;
        budget.max_leaves = 50000;
        auto out = poly::prove_nonneg(p, poly::Region(box), 1e-6, budget);
        if (out.verdict == Verdict::proved) {
            ++proved;
            unsound += grid_min(p) < -1e-6;
        } else if (out.verdict == Verdict::counterexample) {
            ++refuted;
            unsound += !(box.contains_point(out.point) && p.eval(out.point) < -1e-6);
        } else {
            ++unknown;
        }
    }
    d << "prover proved/refuted/unknown=" << proved << "/" << refuted << "/" << unknown << " unsound=" << unsound
      << "; ";
    return unsound == 0;
}

bool lp_vs_vertices(Detail& d) {
    std::mt19937_64 rng(4242);
    std::size_t mismatch = 0, infeasible = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto lp = lp_oracle::random_program(rng, 2 + trial % 3, 3 + trial % 4);
        auto want = lp_oracle::enumerate(lp);
        auto got = synth::lp_solve(lp);
        const bool got_opt = got.status == synth::LpStatus::optimal;
        infeasible += !want.has_value();
        if (got_opt != want.has_value() ||
            (want && std::abs(got.value - *want) > 1e-7 * (1.0 + std::abs(*want)))) {
            ++mismatch;
        }
    }
    d << "lp mismatches=" << mismatch << " (infeasible instances " << infeasible << "); ";
    return mismatch == 0;
}

bool markov_frequency(Detail& d) {
    model::MarkovChain chain({{0.3, 0.7}, {0.4, 0.6}});
    sim::Xoshiro256 rng(7);
    std::size_t mode = 0, visits = 0;
    constexpr std::size_t kSteps = 100000;
    for (std::size_t k = 0; k < kSteps; ++k) {
        visits += mode == 0;
        mode = rng.uniform() < chain(mode, 0) ? 0 : 1;
    }
    const double freq = static_cast<double>(visits) / kSteps;
    d << "mode-1 frequency=" << freq << " (4/11=" << 4.0 / 11.0 << ")";
    return std::abs(freq - 4.0 / 11.0) <= 0.01 && std::abs(chain.stationary()[0] - 4.0 / 11.0) < 1e-12;
}

Outcome numerical_core() {
    Detail d;
    const bool a = expectation_vs_monte_carlo(d);
    const bool b = prover_vs_grid(d);
    const bool c = lp_vs_vertices(d);
    const bool m = markov_frequency(d);
    return {a && b && c && m, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"safety bound reproduction", safety_bound_reproduction},
        {"printed certificate init/unsafe checks", printed_certificate_checks},
        {"drift falsification sweep", drift_falsification},
        {"LMI composition", lmi_composition},
        {"composed constants", composed_constants},
        {"2-room direct network check", two_room_direct_check},
        {"room synthesis end-to-end", room_synthesis},
        {"Monte Carlo vs bound", monte_carlo_vs_bound},
        {"numerical-core oracles", numerical_core},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu (%s) [%.2fs]: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
