// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/certify/io.hpp"

#include <cmath>

namespace stochcert::certify {

using model::ModelError;

namespace {

double number(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) {
        throw ModelError(path, std::string("missing key '") + key + "'");
    }
    const auto& v = obj[key];
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ModelError(path + "/" + key, "expected a finite number");
    }
    return v.get<double>();
}

Polynomial poly_at(const poly::VarSpacePtr& space, const json& j, const std::string& path) {
    if (!j.is_string()) {
        throw ModelError(path, "expected a polynomial string");
    }
    try {
        return Polynomial::parse(space, j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ModelError(path, e.what());
    }
}

SupplyMatrix parse_supply(const json& j, const Subsystem& sub, const std::string& path) {
    const std::size_t p = sub.dims().disturbance, q = sub.dims().output;
    if (!j.is_array()) {
        throw ModelError(path, "expected a matrix");
    }
    std::vector<std::vector<double>> m;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string rp = path + "/" + std::to_string(r);
        if (!j[r].is_array()) {
            throw ModelError(rp, "expected a matrix row");
        }
        std::vector<double> row;
        for (std::size_t c = 0; c < j[r].size(); ++c) {
            if (!j[r][c].is_number()) {
                throw ModelError(rp + "/" + std::to_string(c), "expected a number");
            }
            row.push_back(j[r][c].get<double>());
        }
        m.push_back(std::move(row));
    }
    try {
        return SupplyMatrix(p, q, std::move(m));
    } catch (const CertificateError& e) {
        throw ModelError(path, e.what());
    }
}

StorageCertificate parse_entry(const json& e, const Subsystem& sub, const std::string& path) {
    if (!e.contains("modes") || !e["modes"].is_array()) {
        throw ModelError(path, "missing 'modes' array");
    }
    if (!e.contains("X")) {
        throw ModelError(path, "missing key 'X'");
    }
    const auto& space = sub.space();
    std::vector<ModeCertificate> modes;
    for (std::size_t p = 0; p < e["modes"].size(); ++p) {
        const std::string mp = path + "/modes/" + std::to_string(p);
        const auto& m = e["modes"][p];
        if (!m.is_object()) {
            throw ModelError(mp, "expected an object");
        }
        if (!m.contains("B")) {
            throw ModelError(mp, "missing key 'B'");
        }
        std::vector<Polynomial> ctrl;
        if (m.contains("controller")) {
            if (!m["controller"].is_array()) {
                throw ModelError(mp + "/controller", "expected an array");
            }
            for (std::size_t j = 0; j < m["controller"].size(); ++j) {
                ctrl.push_back(poly_at(space, m["controller"][j], mp + "/controller/" + std::to_string(j)));
            }
        }
        modes.push_back({poly_at(space, m["B"], mp + "/B"), number(m, "kappa", mp), number(m, "gamma", mp),
                         number(m, "lambda", mp), number(m, "psi", mp), std::move(ctrl)});
    }
    try {
        StorageCertificate csc(std::move(modes), parse_supply(e["X"], sub, path + "/X"));
        csc.check_compatible(sub);
        return csc;
    } catch (const CertificateError& err) {
        throw ModelError(path, err.what());
    }
}

}  // namespace

json RunManifest::to_json() const {
    json j{{"command", command}, {"config", config}, {"output_dir", output_dir}, {"version", version}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["tolerances"] = json::object();
    for (const auto& [k, v] : tolerances) {
        j["tolerances"][k] = v;
    }
    return j;
}

std::vector<StorageCertificate> load_certificates(const json& doc, const Network& net) {
    if (!doc.is_object() || !doc.contains("certificates") || !doc["certificates"].is_array()) {
        throw ModelError("", "certificate file needs a 'certificates' array");
    }
    std::vector<std::optional<StorageCertificate>> slots(net.size());
    const auto& entries = doc["certificates"];
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string path = "/certificates/" + std::to_string(k);
        const auto& e = entries[k];
        if (!e.is_object()) {
            throw ModelError(path, "expected an object");
        }
        std::vector<std::size_t> targets;
        const json subs = e.contains("subsystems") ? e["subsystems"] : json("all");
        if (subs == "all") {
            for (std::size_t i = 0; i < net.size(); ++i) {
                targets.push_back(i);
            }
        } else if (subs.is_array()) {
            for (std::size_t j = 0; j < subs.size(); ++j) {
                if (!subs[j].is_number_unsigned() || subs[j].get<std::size_t>() >= net.size()) {
                    throw ModelError(path + "/subsystems/" + std::to_string(j), "not a subsystem index");
                }
                targets.push_back(subs[j].get<std::size_t>());
            }
        } else {
            throw ModelError(path + "/subsystems", "expected \"all\" or an index array");
        }
        for (auto i : targets) {
            if (slots[i]) {
                throw ModelError(path, "subsystem " + std::to_string(i) + " already has a certificate");
            }
            slots[i] = parse_entry(e, net.subsystem(i), path);
        }
    }
    std::vector<StorageCertificate> out;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (!slots[i]) {
            throw ModelError("/certificates", "no certificate for subsystem " + std::to_string(i));
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

json emit_certificate(const StorageCertificate& csc) {
    json modes = json::array();
    for (const auto& m : csc.modes()) {
        json ctrl = json::array();
        for (const auto& c : m.controller) {
            ctrl.push_back(c.to_string());
        }
        modes.push_back({{"B", m.B.to_string()},
                         {"kappa", m.kappa},
                         {"gamma", m.gamma},
                         {"lambda", m.lambda},
                         {"psi", m.psi},
                         {"controller", ctrl}});
    }
    return {{"X", csc.supply().matrix()}, {"modes", modes}};
}

json emit_certificates(const std::vector<StorageCertificate>& cscs) {
    json arr = json::array();
    if (cscs.empty()) {
        return {{"certificates", arr}};
    }
    const json first = emit_certificate(cscs.front());
    bool uniform = true;
    for (const auto& c : cscs) {
        uniform = uniform && emit_certificate(c) == first;
    }
    if (uniform) {
        json e = first;
        e["subsystems"] = "all";
        arr.push_back(e);
    } else {
        for (std::size_t i = 0; i < cscs.size(); ++i) {
            json e = emit_certificate(cscs[i]);
            e["subsystems"] = json::array({i});
            arr.push_back(e);
        }
    }
    return {{"certificates", arr}};
}

json outcome_to_json(const poly::NonnegOutcome& o, const poly::VarSpace* space) {
    json j{{"verdict", poly::verdict_name(o.verdict)},
           {"bound", o.bound},
           {"leaves", o.leaves},
           {"remaining_volume", o.remaining_volume},
           {"min_sampled", o.min_sampled}};
    if (o.verdict == Verdict::counterexample) {
        j["value"] = o.value;
        if (space) {
            json pt = json::object();
            for (std::size_t k = 0; k < o.point.size(); ++k) {
                pt[space->var(k).name] = o.point[k];
            }
            j["point"] = pt;
        } else {
            j["point"] = o.point;
        }
    }
    return j;
}

json report_to_json(const VerificationReport& r, const poly::VarSpace* space) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json j = outcome_to_json(e.outcome, space);
        j["mode"] = e.mode;
        j["condition"] = condition_name(e.condition);
        entries.push_back(j);
    }
    return {{"verdict", poly::verdict_name(r.verdict())},
            {"margin", r.margin()},
            {"entries", entries},
            {"warnings", r.warnings}};
}

json falsify_to_json(const FalsifyResult& r, const poly::VarSpace* space) {
    auto one = [&](const SampleMin& m) {
        json pt;
        if (space) {
            pt = json::object();
            for (std::size_t k = 0; k < m.point.size(); ++k) {
                pt[space->var(k).name] = m.point[k];
            }
        } else {
            pt = m.point;
        }
        return json{{"mode", m.mode},
                    {"condition", condition_name(m.condition)},
                    {"min_value", m.min_value},
                    {"samples", m.samples},
                    {"point", pt}};
    };
    json minima = json::array();
    for (const auto& m : r.minima) {
        minima.push_back(one(m));
    }
    return {{"minima", minima}, {"counterexample", r.counterexample ? one(*r.counterexample) : json(nullptr)}};
}

}  // namespace stochcert::certify
