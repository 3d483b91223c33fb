// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/model/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stochcert::model {

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) {
        throw ModelError(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ModelError(path, std::string("missing key '") + key + "'");
    }
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ModelError(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ModelError(path, "non-finite number");
    }
    return v;
}

std::size_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ModelError(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        throw ModelError(path, "expected an array");
    }
    return j;
}

Dims parse_dims(const json& j, const std::string& path) {
    if (!j.is_object()) {
        throw ModelError(path, "expected an object with n, m, p, q");
    }
    Dims d;
    d.state = as_count(require(j, "n", path), path + "/n");
    d.input = j.contains("m") ? as_count(j["m"], path + "/m") : 0;
    d.disturbance = j.contains("p") ? as_count(j["p"], path + "/p") : 0;
    d.output = j.contains("q") ? as_count(j["q"], path + "/q") : 0;
    d.noise = j.contains("noise") ? as_count(j["noise"], path + "/noise") : d.state;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& k = it.key();
        if (k != "n" && k != "m" && k != "p" && k != "q" && k != "noise") {
            throw ModelError(path + "/" + k, "unknown dimension key");
        }
    }
    return d;
}

Polynomial parse_poly(const VarSpacePtr& space, const json& j, const std::string& path) {
    if (!j.is_string()) {
        throw ModelError(path, "expected a polynomial string");
    }
    try {
        return Polynomial::parse(space, j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ModelError(path, e.what());
    }
}

std::vector<Polynomial> parse_poly_list(const VarSpacePtr& space, const json& j, const std::string& path) {
    std::vector<Polynomial> out;
    const auto& arr = as_array(j, path);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(parse_poly(space, arr[k], path + "/" + std::to_string(k)));
    }
    return out;
}

// Subsystem validation reports paths relative to the subsystem; prefix them.
template <class F>
auto with_prefix(const std::string& prefix, F&& f) {
    try {
        return f();
    } catch (const ModelError& e) {
        const std::string msg = e.what();
        const std::string inner = e.path().empty() ? msg : msg.substr(e.path().size() + 2);
        throw ModelError(prefix + e.path(), inner);
    }
}

Subsystem parse_subsystem(const json& j, const std::string& path) {
    const Dims dims = parse_dims(require(j, "dims", path), path + "/dims");
    auto space = Subsystem::space_for(dims);

    const auto& pij = as_array(require(j, "pi", path), path + "/pi");
    std::vector<std::vector<double>> pi;
    for (std::size_t r = 0; r < pij.size(); ++r) {
        const auto& row = as_array(pij[r], path + "/pi/" + std::to_string(r));
        std::vector<double> vals;
        for (std::size_t c = 0; c < row.size(); ++c) {
            vals.push_back(as_number(row[c], path + "/pi/" + std::to_string(r) + "/" + std::to_string(c)));
        }
        pi.push_back(std::move(vals));
    }
    MarkovChain chain = with_prefix(path + "/pi", [&] { return MarkovChain(pi); });

    const auto& mj = as_array(require(j, "modes", path), path + "/modes");
    std::vector<Mode> modes;
    for (std::size_t p = 0; p < mj.size(); ++p) {
        const std::string mp = path + "/modes/" + std::to_string(p);
        Mode m;
        if (mj[p].contains("label")) {
            if (!mj[p]["label"].is_string()) {
                throw ModelError(mp + "/label", "expected a string");
            }
            m.label = mj[p]["label"].get<std::string>();
        }
        m.dynamics = parse_poly_list(space, require(mj[p], "dynamics", mp), mp + "/dynamics");
        modes.push_back(std::move(m));
    }

    std::vector<Polynomial> h =
        j.contains("h") ? parse_poly_list(space, j["h"], path + "/h") : std::vector<Polynomial>{};

    RegionSpec r;
    r.X = parse_box(require(j, "X", path), path + "/X");
    r.X0 = parse_box(require(j, "X0", path), path + "/X0");
    const auto& xu = as_array(require(j, "Xu", path), path + "/Xu");
    for (std::size_t b = 0; b < xu.size(); ++b) {
        r.Xu.push_back(parse_box(xu[b], path + "/Xu/" + std::to_string(b)));
    }
    r.U = j.contains("U") ? parse_box(j["U"], path + "/U") : std::vector<Interval>{};
    r.W = j.contains("W") ? parse_box(j["W"], path + "/W") : std::vector<Interval>{};

    return with_prefix(path, [&] {
        return Subsystem(dims, space, std::move(chain), std::move(modes), std::move(h), std::move(r));
    });
}

}  // namespace

Interval parse_interval(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw ModelError(path, "expected an interval [lo, hi]");
    }
    Interval iv{as_number(j[0], path + "/0"), as_number(j[1], path + "/1")};
    if (iv.lo > iv.hi) {
        throw ModelError(path, "interval with lo > hi");
    }
    return iv;
}

std::vector<Interval> parse_box(const json& j, const std::string& path) {
    const auto& arr = as_array(j, path);
    std::vector<Interval> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(parse_interval(arr[k], path + "/" + std::to_string(k)));
    }
    return out;
}

json emit_box(const std::vector<Interval>& box) {
    json out = json::array();
    for (const auto& iv : box) {
        out.push_back({iv.lo, iv.hi});
    }
    return out;
}

Network load_network(const json& doc) {
    if (!doc.is_object()) {
        throw ModelError("", "config document must be an object");
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const auto& k = it.key();
        if (k != "subsystems" && k != "interconnection" && k != "mode_coupling" && k != "manifest") {
            throw ModelError("/" + k, "unknown top-level key");
        }
    }
    const auto& sj = as_array(require(doc, "subsystems", ""), "/subsystems");
    std::vector<Subsystem> subs;
    for (std::size_t i = 0; i < sj.size(); ++i) {
        subs.push_back(parse_subsystem(sj[i], "/subsystems/" + std::to_string(i)));
    }

    std::vector<Coupling> couplings;
    if (doc.contains("interconnection")) {
        const auto& ij = as_array(doc["interconnection"], "/interconnection");
        for (std::size_t k = 0; k < ij.size(); ++k) {
            const std::string p = "/interconnection/" + std::to_string(k);
            if (!ij[k].is_array() || ij[k].size() != 3) {
                throw ModelError(p, "expected a triplet [row, col, value]");
            }
            couplings.push_back({as_count(ij[k][0], p + "/0"), as_count(ij[k][1], p + "/1"),
                                 as_number(ij[k][2], p + "/2")});
        }
    }

    ModeCoupling mc = ModeCoupling::independent;
    if (doc.contains("mode_coupling")) {
        const auto& m = doc["mode_coupling"];
        if (m == "independent") {
            mc = ModeCoupling::independent;
        } else if (m == "shared") {
            mc = ModeCoupling::shared;
        } else {
            throw ModelError("/mode_coupling", "expected \"independent\" or \"shared\"");
        }
    }
    return Network(std::move(subs), std::move(couplings), mc);
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ModelError("", path.string() + ": " + e.what());
    }
}

Network load_network_file(const std::filesystem::path& path) { return load_network(read_json_file(path)); }

json emit_subsystem(const Subsystem& s) {
    json j;
    const auto& d = s.dims();
    j["dims"] = {{"n", d.state}, {"m", d.input}, {"p", d.disturbance}, {"q", d.output}, {"noise", d.noise}};
    j["pi"] = s.chain().matrix();
    json modes = json::array();
    for (const auto& m : s.modes()) {
        json dyn = json::array();
        for (const auto& f : m.dynamics) {
            dyn.push_back(f.to_string());
        }
        modes.push_back({{"label", m.label}, {"dynamics", dyn}});
    }
    j["modes"] = modes;
    json h = json::array();
    for (const auto& p : s.output()) {
        h.push_back(p.to_string());
    }
    j["h"] = h;
    const auto& r = s.regions();
    j["X"] = emit_box(r.X);
    j["X0"] = emit_box(r.X0);
    json xu = json::array();
    for (const auto& b : r.Xu) {
        xu.push_back(emit_box(b));
    }
    j["Xu"] = xu;
    j["U"] = emit_box(r.U);
    j["W"] = emit_box(r.W);
    return j;
}

json emit_network(const Network& net) {
    json doc;
    json subs = json::array();
    for (const auto& s : net.subsystems()) {
        subs.push_back(emit_subsystem(s));
    }
    doc["subsystems"] = subs;
    json m = json::array();
    for (const auto& c : net.interconnection()) {
        m.push_back({c.row, c.col, c.value});
    }
    doc["interconnection"] = m;
    doc["mode_coupling"] = net.coupling() == ModeCoupling::shared ? "shared" : "independent";
    return doc;
}

}  // namespace stochcert::model
