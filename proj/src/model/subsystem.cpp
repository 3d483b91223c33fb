// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/model/model.hpp"

namespace stochcert::model {

namespace {

void check_box(const std::vector<Interval>& box, std::size_t dim, const std::string& path) {
    if (box.size() != dim) {
        throw ModelError(path, "expected " + std::to_string(dim) + " intervals, got " +
                                   std::to_string(box.size()));
    }
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (!(box[i].lo <= box[i].hi)) {
            throw ModelError(path + "/" + std::to_string(i), "interval with lo > hi");
        }
    }
}

bool box_inside(const std::vector<Interval>& inner, const std::vector<Interval>& outer) {
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (!outer[i].contains(inner[i])) {
            return false;
        }
    }
    return true;
}

Box make_box(const std::vector<std::size_t>& vars, const std::vector<Interval>& bounds) {
    return Box(vars, bounds);
}

}  // namespace

VarSpacePtr Subsystem::space_for(const Dims& dims) {
    return poly::VarSpace::standard(dims.state, dims.input, dims.disturbance, dims.noise);
}

Subsystem::Subsystem(Dims dims, VarSpacePtr space, MarkovChain chain, std::vector<Mode> modes,
                     std::vector<Polynomial> output, RegionSpec regions)
    : dims_(dims),
      space_(std::move(space)),
      chain_(std::move(chain)),
      modes_(std::move(modes)),
      output_(std::move(output)),
      regions_(std::move(regions)) {
    if (dims_.state == 0) {
        throw ModelError("/dims", "subsystem needs at least one state");
    }
    if (!poly::same_space(space_, space_for(dims_))) {
        throw ModelError("", "variable space does not match the declared dimensions");
    }
    state_vars_ = space_->indices_with_role(poly::VarRole::state);
    input_vars_ = space_->indices_with_role(poly::VarRole::input);
    disturbance_vars_ = space_->indices_with_role(poly::VarRole::disturbance);
    noise_vars_ = space_->indices_with_role(poly::VarRole::noise);

    if (modes_.size() != chain_.modes()) {
        throw ModelError("/modes", "mode count " + std::to_string(modes_.size()) +
                                       " differs from transition matrix size " +
                                       std::to_string(chain_.modes()));
    }
    for (std::size_t p = 0; p < modes_.size(); ++p) {
        const std::string path = "/modes/" + std::to_string(p) + "/dynamics";
        if (modes_[p].dynamics.size() != dims_.state) {
            throw ModelError(path, "expected one polynomial per state coordinate");
        }
        for (std::size_t k = 0; k < modes_[p].dynamics.size(); ++k) {
            if (!poly::same_space(modes_[p].dynamics[k].space(), space_)) {
                throw ModelError(path + "/" + std::to_string(k), "polynomial over a foreign variable space");
            }
        }
    }
    if (output_.size() != dims_.output) {
        throw ModelError("/h", "expected " + std::to_string(dims_.output) + " output polynomials");
    }
    for (std::size_t k = 0; k < output_.size(); ++k) {
        if (!poly::same_space(output_[k].space(), space_)) {
            throw ModelError("/h/" + std::to_string(k), "polynomial over a foreign variable space");
        }
        for (auto v : output_[k].free_variables()) {
            if (space_->var(v).role != poly::VarRole::state) {
                throw ModelError("/h/" + std::to_string(k), "output map depends on non-state variable '" +
                                                                space_->var(v).name + "'");
            }
        }
    }

    check_box(regions_.X, dims_.state, "/X");
    check_box(regions_.X0, dims_.state, "/X0");
    check_box(regions_.U, dims_.input, "/U");
    check_box(regions_.W, dims_.disturbance, "/W");
    if (!box_inside(regions_.X0, regions_.X)) {
        throw ModelError("/X0", "initial set is not contained in X");
    }
    for (std::size_t b = 0; b < regions_.Xu.size(); ++b) {
        const std::string path = "/Xu/" + std::to_string(b);
        check_box(regions_.Xu[b], dims_.state, path);
        if (!box_inside(regions_.Xu[b], regions_.X)) {
            throw ModelError(path, "unsafe box is not contained in X");
        }
    }
}

Box Subsystem::state_box() const { return make_box(state_vars_, regions_.X); }
Box Subsystem::init_box() const { return make_box(state_vars_, regions_.X0); }
Box Subsystem::input_box() const { return make_box(input_vars_, regions_.U); }
Box Subsystem::disturbance_box() const { return make_box(disturbance_vars_, regions_.W); }

Region Subsystem::unsafe_region() const {
    std::vector<Box> boxes;
    for (const auto& b : regions_.Xu) {
        boxes.push_back(make_box(state_vars_, b));
    }
    return Region(std::move(boxes));
}

Box Subsystem::state_disturbance_box() const {
    return state_box().product(disturbance_box());
}

}  // namespace stochcert::model
