// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/poly/varspace.hpp"

#include <stdexcept>
#include <unordered_set>

namespace stochcert::poly {

std::string_view role_name(VarRole role) {
    switch (role) {
    case VarRole::state: return "state";
    case VarRole::input: return "input";
    case VarRole::disturbance: return "disturbance";
    case VarRole::noise: return "noise";
    }
    return "?";
}

VarSpace::VarSpace(std::vector<Var> vars) : vars_(std::move(vars)) {
    std::unordered_set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.name.empty()) {
            throw std::invalid_argument("variable with empty name");
        }
        if (!seen.insert(v.name).second) {
            throw std::invalid_argument("duplicate variable '" + v.name + "'");
        }
    }
}

std::shared_ptr<const VarSpace> VarSpace::standard(std::size_t states, std::size_t inputs,
                                                   std::size_t disturbances, std::size_t noises) {
    std::vector<Var> vars;
    auto push = [&](const char* prefix, std::size_t count, VarRole role) {
        for (std::size_t i = 1; i <= count; ++i) {
            vars.push_back({prefix + std::to_string(i), role});
        }
    };
    push("x", states, VarRole::state);
    push("nu", inputs, VarRole::input);
    push("w", disturbances, VarRole::disturbance);
    push("sigma", noises, VarRole::noise);
    return std::make_shared<const VarSpace>(std::move(vars));
}

std::optional<std::size_t> VarSpace::find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t VarSpace::index_of(std::string_view name) const {
    if (auto i = find(name)) {
        return *i;
    }
    throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

std::vector<std::size_t> VarSpace::indices_with_role(VarRole role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].role == role) {
            out.push_back(i);
        }
    }
    return out;
}

bool same_space(const VarSpacePtr& a, const VarSpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace stochcert::poly
