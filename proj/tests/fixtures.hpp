// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "stochcert/certify/io.hpp"

namespace fixtures {

using namespace stochcert;

inline std::string data_path(const std::string& name) { return std::string(STOCHCERT_DATA_DIR) + "/" + name; }

/// Certificate printed for the room network, shared by every room.
inline std::vector<certify::StorageCertificate> room_certificates(const model::Network& net) {
    return certify::load_certificates(model::read_json_file(data_path("room_certificate.json")), net);
}

/// x+ = a x + c w + g sigma on X = [-2, 2], X0 = [-0.5, 0.5], Xu = [1.5, 2],
/// W = [-2, 2], output y = x.
inline model::Subsystem scalar_subsystem(double a = 0.5, double c = 0.0, double g = 0.0,
                                         std::vector<std::vector<double>> pi = {{1.0}}) {
    const bool noisy = g != 0.0;
    model::Dims dims{1, 0, 1, 1, noisy ? 1u : 0u};
    auto sp = model::Subsystem::space_for(dims);
    auto x = poly::Polynomial::variable(sp, "x1");
    auto w = poly::Polynomial::variable(sp, "w1");
    std::vector<model::Mode> modes;
    for (std::size_t p = 0; p < pi.size(); ++p) {
        auto f = a * x + c * w;
        if (noisy) {
            f = f + g * poly::Polynomial::variable(sp, "sigma1");
        }
        modes.push_back({"m" + std::to_string(p + 1), {f}});
    }
    model::RegionSpec r;
    r.X = {{-2.0, 2.0}};
    r.X0 = {{-0.5, 0.5}};
    r.Xu = {{{1.5, 2.0}}};
    r.W = {{-2.0, 2.0}};
    return model::Subsystem(dims, sp, model::MarkovChain(pi), modes, {x}, r);
}

}  // namespace fixtures
