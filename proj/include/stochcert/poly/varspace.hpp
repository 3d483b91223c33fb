// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stochcert::poly {

enum class VarRole { state, input, disturbance, noise };

std::string_view role_name(VarRole role);

/// Ordered, immutable set of named variables. Exponent vectors of every
/// polynomial over this space are indexed by position in this list.
class VarSpace {
public:
    struct Var {
        std::string name;
        VarRole role;
        bool operator==(const Var&) const = default;
    };

    explicit VarSpace(std::vector<Var> vars);

    /// Standard layout x1..xn, nu1..nu_m, w1..w_p, sigma1..sigma_r.
    static std::shared_ptr<const VarSpace> standard(std::size_t states, std::size_t inputs,
                                                    std::size_t disturbances, std::size_t noises);

    std::size_t size() const { return vars_.size(); }
    const Var& var(std::size_t i) const { return vars_.at(i); }
    const std::vector<Var>& vars() const { return vars_; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;  // throws when absent
    std::vector<std::size_t> indices_with_role(VarRole role) const;

    bool operator==(const VarSpace& other) const { return vars_ == other.vars_; }

private:
    std::vector<Var> vars_;
};

using VarSpacePtr = std::shared_ptr<const VarSpace>;

/// Structural equality with a pointer fast path.
bool same_space(const VarSpacePtr& a, const VarSpacePtr& b);

}  // namespace stochcert::poly
