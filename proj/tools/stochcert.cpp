// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stochcert/bound/safety_bound.hpp"
#include "stochcert/certify/io.hpp"
#include "stochcert/compose/compose.hpp"
#include "stochcert/sim/simulate.hpp"
#include "stochcert/synth/cegis.hpp"
#include "stochcert/synth/sos_export.hpp"

namespace fs = std::filesystem;
using namespace stochcert;
using certify::json;
using certify::RunManifest;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitUnknown = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string g_command;
unsigned g_threads = 1;

RunManifest manifest(const std::string& config, const std::string& out) {
    RunManifest m;
    m.command = g_command;
    m.config = config;
    if (!out.empty()) {
        m.output_dir = fs::path(out).parent_path().string();
        if (m.output_dir.empty()) {
            m.output_dir = ".";
        }
    }
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    f << text;
}

void write_json(const std::string& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

template <class T>
std::vector<T> split_list(const std::string& s, const std::string& what) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::istringstream is(item);
        T v{};
        if (!(is >> v) || !is.eof()) {
            throw UsageError("bad " + what + " entry '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("empty " + what);
    }
    return out;
}

// Subsystem and certificate JSON are canonical, so equal dumps mean equal data.
std::string subsystem_key(const model::Subsystem& s) { return model::emit_subsystem(s).dump(); }

std::vector<std::vector<std::size_t>> group_by(const std::vector<std::string>& keys) {
    std::map<std::string, std::size_t> seen;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [it, fresh] = seen.emplace(keys[i], groups.size());
        if (fresh) {
            groups.emplace_back();
        }
        groups[it->second].push_back(i);
    }
    return groups;
}

std::vector<double> mu_vector(const std::vector<double>& mu, std::size_t n) {
    if (mu.size() == 1) {
        return std::vector<double>(n, mu[0]);
    }
    if (mu.size() != n) {
        throw UsageError("--mu needs 1 or " + std::to_string(n) + " values");
    }
    return mu;
}

compose::LmiMethod parse_lmi(const std::string& s) {
    if (s == "auto") return compose::LmiMethod::automatic;
    if (s == "eigen") return compose::LmiMethod::eigen;
    if (s == "gershgorin") return compose::LmiMethod::gershgorin;
    throw UsageError("--lmi must be auto, eigen or gershgorin");
}

int verdict_exit(poly::Verdict v) {
    switch (v) {
        case poly::Verdict::proved: return kExitProved;
        case poly::Verdict::counterexample: return kExitRefuted;
        default: return kExitUnknown;
    }
}

// Supply candidates: a single matrix, an array of matrices, or {"supply": ...}.
std::vector<certify::SupplyMatrix> load_supplies(const std::string& path, const model::Subsystem& sub) {
    json doc = model::read_json_file(path);
    if (doc.is_object()) {
        if (!doc.contains("supply")) {
            throw model::ModelError("", "supply file needs a 'supply' entry");
        }
        doc = doc["supply"];
    }
    auto is_matrix = [](const json& j) { return j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_number(); };
    std::vector<json> mats;
    if (is_matrix(doc)) {
        mats.push_back(doc);
    } else if (doc.is_array()) {
        for (const auto& m : doc) {
            mats.push_back(m);
        }
    }
    if (mats.empty()) {
        throw model::ModelError("/supply", "expected a matrix or an array of matrices");
    }
    std::vector<certify::SupplyMatrix> out;
    const std::size_t p = sub.dims().disturbance, q = sub.dims().output;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const std::string where = "/supply/" + std::to_string(k);
        if (!is_matrix(mats[k])) {
            throw model::ModelError(where, "expected a numeric matrix");
        }
        auto m = mats[k].get<std::vector<std::vector<double>>>();
        if (m.size() != p + q || std::any_of(m.begin(), m.end(), [&](const auto& r) { return r.size() != p + q; })) {
            throw model::ModelError(where, "supply matrix must be " + std::to_string(p + q) + "x" +
                                               std::to_string(p + q));
        }
        out.emplace_back(p, q, std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------

struct CasestudyArgs {
    std::size_t rooms = 0;
    std::string out;
    bool shared = false;
};

int run_casestudy(const CasestudyArgs& a) {
    if (a.rooms < 2) {
        throw UsageError("--rooms must be at least 2");
    }
    model::RoomParams params;
    if (a.shared) {
        params.coupling = model::ModeCoupling::shared;
    }
    auto net = model::room_casestudy(a.rooms, params);
    json doc = model::emit_network(net);
    doc["manifest"] = manifest("", a.out).to_json();
    write_json(a.out, doc);
    return 0;
}

struct VerifyArgs {
    std::string config, certs, conditions, out;
    double tol = 1e-6;
    std::uint64_t budget = 1'000'000;
};

int run_verify(const VerifyArgs& a) {
    auto net = model::load_network_file(a.config);
    auto cscs = certify::load_certificates(model::read_json_file(a.certs), net);
    certify::VerifyOptions opt;
    opt.tol = a.tol;
    opt.budget.max_leaves = a.budget;
    opt.threads = g_threads;
    if (!a.conditions.empty()) {
        opt.conditions.clear();
        for (const auto& c : split_list<std::string>(a.conditions, "--conditions")) {
            opt.conditions.push_back(certify::parse_condition(c));
        }
    }
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < net.size(); ++i) {
        keys.push_back(subsystem_key(net.subsystem(i)) + certify::emit_certificate(cscs[i]).dump());
    }
    json groups = json::array();
    bool refuted = false, unknown = false;
    for (const auto& g : group_by(keys)) {
        const auto& sub = net.subsystem(g.front());
        auto rep = certify::verify_csc(sub, cscs[g.front()], opt);
        for (const auto& w : rep.warnings) {
            std::cerr << "warning: subsystem " << g.front() << ": " << w << "\n";
        }
        for (const auto& e : rep.entries) {
            if (e.outcome.verdict != poly::Verdict::proved) {
                std::cerr << "subsystem " << g.front() << " mode " << e.mode << " "
                          << certify::condition_name(e.condition) << ": " << poly::verdict_name(e.outcome.verdict)
                          << " (bound " << e.outcome.bound << ")\n";
            }
        }
        refuted |= rep.verdict() == poly::Verdict::counterexample;
        unknown |= rep.verdict() == poly::Verdict::unknown;
        groups.push_back({{"subsystems", g}, {"report", certify::report_to_json(rep, sub.space().get())}});
    }
    const auto verdict = refuted ? poly::Verdict::counterexample
                                 : (unknown ? poly::Verdict::unknown : poly::Verdict::proved);
    auto m = manifest(a.config, a.out);
    m.tolerances["tol"] = a.tol;
    json doc{{"manifest", m.to_json()}, {"verdict", poly::verdict_name(verdict)}, {"groups", groups}};
    write_json(a.out, doc);
    return verdict_exit(verdict);
}

struct SynthArgs {
    std::string config, kappa_grid, supply, out;
    unsigned degree = 4;
    std::uint64_t seed = 1;
    std::uint64_t budget = 1'000'000;
    double time_limit = 0.0;
    double margin = 1e-3;
    double tol = 1e-6;
};

int run_synthesize(const SynthArgs& a) {
    auto net = model::load_network_file(a.config);
    std::vector<std::string> keys;
    for (const auto& s : net.subsystems()) {
        keys.push_back(subsystem_key(s));
    }
    synth::SynthOptions opt;
    opt.seed = a.seed;
    opt.margin = a.margin;
    opt.time_limit = a.time_limit;
    opt.verify.tol = a.tol;
    opt.verify.budget.max_leaves = a.budget;
    opt.verify.threads = g_threads;

    std::vector<std::optional<certify::StorageCertificate>> certs(net.size());
    json runs = json::array();
    bool failed = false;
    for (const auto& g : group_by(keys)) {
        const auto& sub = net.subsystem(g.front());
        synth::Template tmpl;
        tmpl.degree = a.degree;
        if (!a.kappa_grid.empty()) {
            tmpl.kappa_grid = split_list<double>(a.kappa_grid, "--kappa-grid");
        }
        if (!a.supply.empty()) {
            tmpl.supply_candidates = load_supplies(a.supply, sub);
        }
        try {
            tmpl.validate(sub);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        auto res = synth::synthesize_csc(sub, tmpl, opt);
        for (const auto& d : res.diagnostics) {
            std::cerr << "subsystem " << g.front() << ": " << d << "\n";
        }
        json run{{"subsystems", g},
                 {"proved", res.proved},
                 {"kappa", res.kappa},
                 {"supply_index", res.supply_index},
                 {"rounds", res.rounds},
                 {"lp_solves", res.lp_solves},
                 {"diagnostics", res.diagnostics}};
        if (res.last_candidate) {
            run["report"] = certify::report_to_json(res.report, sub.space().get());
        }
        runs.push_back(run);
        if (!res.proved) {
            std::cerr << "subsystem " << g.front() << ": no certificate found\n";
            failed = true;
            continue;
        }
        for (auto i : g) {
            certs[i] = *res.certificate;
        }
    }
    auto m = manifest(a.config, a.out);
    m.seed = a.seed;
    m.tolerances["tol"] = a.tol;
    m.tolerances["margin"] = a.margin;
    json doc{{"manifest", m.to_json()}, {"synthesis", runs}};
    if (failed) {
        write_json(a.out, doc);
        return kExitRefuted;
    }
    std::vector<certify::StorageCertificate> all;
    for (auto& c : certs) {
        all.push_back(std::move(*c));
    }
    json emitted = certify::emit_certificates(all);
    doc["certificates"] = emitted["certificates"];
    write_json(a.out, doc);
    return kExitProved;
}

struct ComposeArgs {
    std::string config, certs, mu = "1", lmi = "auto", out;
    double tol = 1e-9;
    bool direct = false;
    double direct_tol = 1e-5;
    std::uint64_t budget = 1'000'000;
};

int run_compose(const ComposeArgs& a) {
    auto net = model::load_network_file(a.config);
    auto cscs = certify::load_certificates(model::read_json_file(a.certs), net);
    auto mu = mu_vector(split_list<double>(a.mu, "--mu"), net.size());
    const auto method = parse_lmi(a.lmi);
    auto xcmp = compose::assemble_xcmp(net, cscs, mu);
    auto lmi = compose::check_dissipativity_lmi(net, xcmp, a.tol, method);
    auto gap = compose::check_level_gap(cscs, mu);
    auto m = manifest(a.config, a.out);
    m.tolerances["lmi"] = a.tol;
    json doc{{"manifest", m.to_json()},
             {"lmi",
              {{"holds", lmi.holds},
               {"max_eig", lmi.max_eig},
               {"method", compose::lmi_method_name(lmi.method)},
               {"dim", lmi.dim}}},
             {"level_gap", {{"holds", gap.holds}, {"lhs", gap.lhs}, {"rhs", gap.rhs}}}};
    int code = kExitProved;
    try {
        auto cert = compose::compose_cbc(net, cscs, mu, a.tol, method);
        doc["composed"] = {{"gamma", cert.gamma()}, {"lambda", cert.lambda()}, {"kappa", cert.kappa()},
                           {"psi", cert.psi()}, {"mu", cert.mu()}};
        if (a.direct) {
            m.tolerances["direct"] = a.direct_tol;
            doc["manifest"] = m.to_json();
            poly::ProofBudget budget;
            budget.max_leaves = a.budget;
            auto rep = certify::verify_cbc_direct(net, cert, a.direct_tol, budget);
            doc["direct"] = certify::report_to_json(rep, nullptr);
            code = verdict_exit(rep.verdict());
            if (code != kExitProved) {
                std::cerr << "direct check of the composed certificate: " << poly::verdict_name(rep.verdict())
                          << "\n";
            }
        }
    } catch (const compose::CompositionRefused& e) {
        std::cerr << "composition refused (" << e.condition() << "): " << e.what() << "\n";
        doc["refused"] = e.condition();
        code = kExitRefuted;
    }
    write_json(a.out, doc);
    return code;
}

struct BoundArgs {
    double gamma = 0, lambda = 0, kappa = 0, psi = 0;
    std::uint64_t horizon = 0;
    std::string out;
};

int run_bound(const BoundArgs& a) {
    bound::BoundResult r;
    try {
        r = bound::safety_bound({a.gamma, a.lambda, a.kappa, a.psi, a.horizon});
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    json doc{{"manifest", manifest("", a.out).to_json()},
             {"delta", r.delta},
             {"safety", 1.0 - r.delta},
             {"raw", r.raw},
             {"branch", r.branch}};
    write_json(a.out, doc);
    return 0;
}

struct SimArgs {
    std::string config, certs, csv, track, out, mu = "1", coupling;
    std::size_t trials = 1000, horizon = 100;
    std::uint64_t seed = 42;
    bool no_clamp = false;
    std::optional<std::size_t> initial_mode;
};

int run_simulate(const SimArgs& a) {
    auto net = model::load_network_file(a.config);
    auto cscs = certify::load_certificates(model::read_json_file(a.certs), net);
    sim::SimConfig cfg;
    cfg.seed = a.seed;
    cfg.trials = a.trials;
    cfg.horizon = a.horizon;
    cfg.clamp = !a.no_clamp;
    cfg.threads = g_threads;
    if (a.initial_mode) {
        cfg.initial_mode = *a.initial_mode;
    }
    if (a.coupling == "shared") {
        cfg.coupling = model::ModeCoupling::shared;
    } else if (a.coupling == "independent") {
        cfg.coupling = model::ModeCoupling::independent;
    } else if (!a.coupling.empty()) {
        throw UsageError("--coupling must be shared or independent");
    }
    if (!a.csv.empty()) {
        cfg.record = true;
        if (!a.track.empty()) {
            for (auto i : split_list<std::size_t>(a.track, "--track")) {
                if (i >= net.size()) {
                    throw UsageError("--track index " + std::to_string(i) + " out of range");
                }
                cfg.tracked.push_back(i);
            }
        }
    }
    std::optional<double> delta;
    try {
        auto mu = mu_vector(split_list<double>(a.mu, "--mu"), net.size());
        auto cert = compose::compose_cbc(net, cscs, mu);
        delta = bound::safety_bound({cert.gamma(), cert.lambda(), cert.kappa(), cert.psi(), a.horizon}).delta;
    } catch (const compose::CompositionRefused& e) {
        std::cerr << "no bound: composition refused (" << e.condition() << ")\n";
    }
    auto res = sim::simulate(net, sim::controllers_from(cscs), cfg);
    const auto& s = res.summary;
    auto m = manifest(a.config, a.out);
    m.seed = a.seed;
    json mj = m.to_json();
    json doc{{"manifest", mj},
             {"trials", s.trials},
             {"violations", s.violations},
             {"p_hat", s.p_hat},
             {"ci_low", s.ci.lo},
             {"ci_high", s.ci.hi},
             {"delta_bound", delta ? json(*delta) : json(nullptr)},
             {"clamp_events", s.clamp_events},
             {"coupling", s.coupling == model::ModeCoupling::shared ? "shared" : "independent"}};
    if (!a.csv.empty()) {
        std::vector<std::string> header;
        for (const auto& [k, v] : mj.items()) {
            header.push_back(k + ": " + v.dump());
        }
        write_text(a.csv, sim::trajectories_csv(res, header));
    }
    write_json(a.out, doc);
    return 0;
}

struct ExportArgs {
    std::string config, out, kappa_grid, supply;
    std::size_t subsystem = 0;
    unsigned degree = 4;
    std::vector<std::string> multipliers;
};

int run_export_sos(const ExportArgs& a) {
    auto net = model::load_network_file(a.config);
    if (a.subsystem >= net.size()) {
        throw UsageError("--subsystem out of range");
    }
    const auto& sub = net.subsystem(a.subsystem);
    synth::Template tmpl;
    tmpl.degree = a.degree;
    if (!a.kappa_grid.empty()) {
        tmpl.kappa_grid = split_list<double>(a.kappa_grid, "--kappa-grid");
    }
    if (!a.supply.empty()) {
        tmpl.supply_candidates = load_supplies(a.supply, sub);
    }
    synth::MultiplierDegrees deg;
    for (const auto& spec : a.multipliers) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--multiplier expects name=degree");
        }
        deg[spec.substr(0, eq)] = split_list<unsigned>(spec.substr(eq + 1), "--multiplier")[0];
    }
    std::string text;
    try {
        text = synth::export_sos(sub, tmpl, deg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::string header;
    const json info = manifest(a.config, a.out).to_json();
    for (const auto& [k, v] : info.items()) {
        header += "# " + k + ": " + v.dump() + "\n";
    }
    write_text(a.out, header + text);
    return 0;
}

struct FalsifyArgs {
    std::string config, certs, out;
    std::size_t samples = 100000;
    std::uint64_t seed = 42;
    double tol = 1e-6;
};

int run_falsify(const FalsifyArgs& a) {
    auto net = model::load_network_file(a.config);
    auto cscs = certify::load_certificates(model::read_json_file(a.certs), net);
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < net.size(); ++i) {
        keys.push_back(subsystem_key(net.subsystem(i)) + certify::emit_certificate(cscs[i]).dump());
    }
    json groups = json::array();
    bool refuted = false;
    for (const auto& g : group_by(keys)) {
        const auto& sub = net.subsystem(g.front());
        auto r = certify::falsify(sub, cscs[g.front()], a.samples, a.seed, a.tol);
        refuted |= r.counterexample.has_value();
        groups.push_back({{"subsystems", g}, {"result", certify::falsify_to_json(r, sub.space().get())}});
    }
    auto m = manifest(a.config, a.out);
    m.seed = a.seed;
    m.tolerances["tol"] = a.tol;
    write_json(a.out, {{"manifest", m.to_json()}, {"groups", groups}});
    return refuted ? kExitRefuted : 0;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) {
        g_command += (i ? " " : "") + std::string(i ? argv[i] : "stochcert");
    }
    CLI::App app{"Storage and barrier certificates for interconnected Markov-switching systems"};
    app.require_subcommand(1);
    g_threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--threads", g_threads, "Worker threads")->check(CLI::PositiveNumber);
    app.set_version_flag("--version", std::string(STOCHCERT_VERSION));

    CasestudyArgs cs;
    auto* c_cs = app.add_subcommand("casestudy", "Write the room-temperature network config");
    c_cs->add_option("--rooms", cs.rooms, "Number of rooms (>= 2)")->required();
    c_cs->add_option("--out", cs.out, "Output config file");
    c_cs->add_flag("--shared-modes", cs.shared, "One mode chain shared by all rooms");

    VerifyArgs va;
    auto* c_v = app.add_subcommand("verify", "Prove the storage conditions of a certificate file");
    c_v->add_option("--config", va.config)->required()->check(CLI::ExistingFile);
    c_v->add_option("--certs", va.certs)->required()->check(CLI::ExistingFile);
    c_v->add_option("--conditions", va.conditions, "Comma list of init,unsafe,nonneg,drift");
    c_v->add_option("--tol", va.tol);
    c_v->add_option("--budget", va.budget, "Leaf budget per condition");
    c_v->add_option("--out", va.out);

    SynthArgs sa;
    auto* c_s = app.add_subcommand("synthesize", "Search for certificates and controllers");
    c_s->add_option("--config", sa.config)->required()->check(CLI::ExistingFile);
    c_s->add_option("--degree", sa.degree);
    c_s->add_option("--kappa-grid", sa.kappa_grid, "Comma list of kappa values");
    c_s->add_option("--supply", sa.supply, "JSON file with supply matrix candidates")->check(CLI::ExistingFile);
    c_s->add_option("--seed", sa.seed);
    c_s->add_option("--budget", sa.budget, "Leaf budget per condition");
    c_s->add_option("--time-limit", sa.time_limit, "Seconds per subsystem, 0 for none");
    c_s->add_option("--margin", sa.margin);
    c_s->add_option("--tol", sa.tol);
    c_s->add_option("--out", sa.out);

    ComposeArgs ca;
    auto* c_c = app.add_subcommand("compose", "Compose subsystem certificates into a network certificate");
    c_c->add_option("--config", ca.config)->required()->check(CLI::ExistingFile);
    c_c->add_option("--certs", ca.certs)->required()->check(CLI::ExistingFile);
    c_c->add_option("--mu", ca.mu, "One weight, or a comma list with one per subsystem");
    c_c->add_option("--lmi", ca.lmi, "auto, eigen or gershgorin");
    c_c->add_option("--tol", ca.tol);
    c_c->add_flag("--direct", ca.direct, "Also prove the composed certificate on the closed loop");
    c_c->add_option("--direct-tol", ca.direct_tol);
    c_c->add_option("--budget", ca.budget);
    c_c->add_option("--out", ca.out);

    BoundArgs ba;
    auto* c_b = app.add_subcommand("bound", "Finite-horizon violation bound");
    c_b->add_option("--gamma", ba.gamma)->required();
    c_b->add_option("--lambda", ba.lambda)->required();
    c_b->add_option("--kappa", ba.kappa)->required();
    c_b->add_option("--psi", ba.psi)->required();
    c_b->add_option("--horizon", ba.horizon)->required();
    c_b->add_option("--out", ba.out);

    SimArgs ma;
    auto* c_m = app.add_subcommand("simulate", "Monte Carlo estimate of the violation probability");
    c_m->add_option("--config", ma.config)->required()->check(CLI::ExistingFile);
    c_m->add_option("--certs", ma.certs, "Certificate file carrying the controllers")->required()->check(CLI::ExistingFile);
    c_m->add_option("--trials", ma.trials);
    c_m->add_option("--horizon", ma.horizon);
    c_m->add_option("--seed", ma.seed);
    c_m->add_option("--csv", ma.csv, "Trajectory CSV output");
    c_m->add_option("--track", ma.track, "Comma list of subsystems recorded in the CSV");
    c_m->add_flag("--no-clamp", ma.no_clamp, "Do not clamp inputs to U");
    c_m->add_option("--initial-mode", ma.initial_mode, "Start every chain in this mode");
    c_m->add_option("--coupling", ma.coupling, "Override the config: shared or independent");
    c_m->add_option("--mu", ma.mu, "Weights for the reported bound");
    c_m->add_option("--out", ma.out);

    ExportArgs ea;
    auto* c_e = app.add_subcommand("export-sos", "Write the SOS program of one subsystem");
    c_e->add_option("--config", ea.config)->required()->check(CLI::ExistingFile);
    c_e->add_option("--subsystem", ea.subsystem);
    c_e->add_option("--degree", ea.degree);
    c_e->add_option("--kappa-grid", ea.kappa_grid);
    c_e->add_option("--supply", ea.supply)->check(CLI::ExistingFile);
    c_e->add_option("--multiplier", ea.multipliers, "name=degree");
    c_e->add_option("--out", ea.out);

    FalsifyArgs fa;
    auto* c_f = app.add_subcommand("falsify", "Sample the storage conditions for counterexamples");
    c_f->add_option("--config", fa.config)->required()->check(CLI::ExistingFile);
    c_f->add_option("--certs", fa.certs)->required()->check(CLI::ExistingFile);
    c_f->add_option("--samples", fa.samples);
    c_f->add_option("--seed", fa.seed);
    c_f->add_option("--tol", fa.tol);
    c_f->add_option("--out", fa.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_cs) return run_casestudy(cs);
        if (*c_v) return run_verify(va);
        if (*c_s) return run_synthesize(sa);
        if (*c_c) return run_compose(ca);
        if (*c_b) return run_bound(ba);
        if (*c_m) return run_simulate(ma);
        if (*c_e) return run_export_sos(ea);
        if (*c_f) return run_falsify(fa);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const model::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const certify::CertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
