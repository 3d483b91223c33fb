// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/model/model.hpp"

namespace stochcert::model {

Network room_casestudy(std::size_t rooms, const RoomParams& prm) {
    if (rooms < 2) {
        throw std::invalid_argument("room network needs at least 2 rooms");
    }
    const std::size_t modes = prm.pi.size();
    if (prm.outside_temp.size() != modes || prm.noise_gain.size() != modes) {
        throw std::invalid_argument("per-mode parameters do not match the transition matrix");
    }
    const Dims dims{1, 1, 1, 1, 1};
    auto space = Subsystem::space_for(dims);
    const auto x = Polynomial::variable(space, "x1");
    const auto nu = Polynomial::variable(space, "nu1");
    const auto w = Polynomial::variable(space, "w1");
    const auto sigma = Polynomial::variable(space, "sigma1");

    std::vector<Mode> mode_list;
    for (std::size_t p = 0; p < modes; ++p) {
        const Polynomial f = (1.0 - 2.0 * prm.theta - prm.alpha) * x - prm.beta * (nu * x) +
                             (prm.beta * prm.heater_temp) * nu + prm.theta * w +
                             prm.noise_gain[p] * sigma;
        mode_list.push_back({"mode" + std::to_string(p + 1),
                             {f.add_constant(prm.alpha * prm.outside_temp[p])}});
    }

    // Two rooms share a single wall, so w_i is the other room alone.
    const double links = rooms == 2 ? 1.0 : 2.0;
    RegionSpec regions;
    regions.X = {prm.X};
    regions.X0 = {prm.X0};
    for (const auto& iv : prm.Xu) {
        regions.Xu.push_back({iv});
    }
    regions.U = {prm.U};
    regions.W = {{links * prm.X.lo, links * prm.X.hi}};

    const MarkovChain chain(prm.pi);
    std::vector<Subsystem> subs;
    subs.reserve(rooms);
    for (std::size_t i = 0; i < rooms; ++i) {
        subs.emplace_back(dims, space, chain, mode_list, std::vector<Polynomial>{x}, regions);
    }

    std::vector<Coupling> m;
    if (rooms == 2) {
        m = {{0, 1, 1.0}, {1, 0, 1.0}};
    } else {
        for (std::size_t i = 0; i < rooms; ++i) {
            m.push_back({i, (i + rooms - 1) % rooms, 1.0});
            m.push_back({i, (i + 1) % rooms, 1.0});
        }
    }
    return Network(std::move(subs), std::move(m), prm.coupling);
}

}  // namespace stochcert::model
