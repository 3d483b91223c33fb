// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochcert/poly/interval.hpp"
#include "stochcert/poly/polynomial.hpp"

namespace stochcert::model {

using poly::Box;
using poly::Interval;
using poly::Polynomial;
using poly::Region;
using poly::VarSpacePtr;

/// Validation failure located by a JSON-pointer-style path.
class ModelError : public std::invalid_argument {
public:
    ModelError(std::string path, const std::string& what)
        : std::invalid_argument(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Row-stochastic transition matrix of the switching signal.
class MarkovChain {
public:
    static constexpr double kRowTolerance = 1e-9;

    explicit MarkovChain(std::vector<std::vector<double>> pi);

    std::size_t modes() const { return pi_.size(); }
    double operator()(std::size_t from, std::size_t to) const { return pi_.at(from).at(to); }
    const std::vector<double>& row(std::size_t from) const { return pi_.at(from); }
    const std::vector<std::vector<double>>& matrix() const { return pi_; }
    /// Solves p = p*pi, sum p = 1.
    std::vector<double> stationary() const;

    bool operator==(const MarkovChain&) const = default;

private:
    std::vector<std::vector<double>> pi_;
};

struct Dims {
    std::size_t state = 1;
    std::size_t input = 0;
    std::size_t disturbance = 0;
    std::size_t output = 0;
    std::size_t noise = 0;
    bool operator==(const Dims&) const = default;
};

struct Mode {
    std::string label;
    /// One polynomial per state coordinate over (x, nu, w, sigma).
    std::vector<Polynomial> dynamics;
};

struct RegionSpec {
    std::vector<Interval> X;
    std::vector<Interval> X0;
    std::vector<std::vector<Interval>> Xu;
    std::vector<Interval> U;
    std::vector<Interval> W;
    bool operator==(const RegionSpec&) const = default;
};

/// Discrete-time stochastic switching subsystem.
class Subsystem {
public:
    static VarSpacePtr space_for(const Dims& dims);

    Subsystem(Dims dims, VarSpacePtr space, MarkovChain chain, std::vector<Mode> modes,
              std::vector<Polynomial> output, RegionSpec regions);

    const Dims& dims() const { return dims_; }
    const VarSpacePtr& space() const { return space_; }
    const MarkovChain& chain() const { return chain_; }
    std::size_t mode_count() const { return modes_.size(); }
    const Mode& mode(std::size_t p) const { return modes_.at(p); }
    const std::vector<Mode>& modes() const { return modes_; }
    const std::vector<Polynomial>& output() const { return output_; }
    const RegionSpec& regions() const { return regions_; }

    const std::vector<std::size_t>& state_vars() const { return state_vars_; }
    const std::vector<std::size_t>& input_vars() const { return input_vars_; }
    const std::vector<std::size_t>& disturbance_vars() const { return disturbance_vars_; }
    const std::vector<std::size_t>& noise_vars() const { return noise_vars_; }

    Box state_box() const;
    Box init_box() const;
    Region unsafe_region() const;
    Box input_box() const;
    Box disturbance_box() const;
    /// X x W, the domain of the supply-rate inequality.
    Box state_disturbance_box() const;

private:
    Dims dims_;
    VarSpacePtr space_;
    MarkovChain chain_;
    std::vector<Mode> modes_;
    std::vector<Polynomial> output_;
    RegionSpec regions_;
    std::vector<std::size_t> state_vars_, input_vars_, disturbance_vars_, noise_vars_;
};

enum class ModeCoupling { independent, shared };

struct Coupling {
    std::size_t row;
    std::size_t col;
    double value;
    bool operator==(const Coupling&) const = default;
};

/// Interconnection w = M y of subsystems; M is sparse (rows index stacked
/// disturbances, columns stacked outputs).
class Network {
public:
    Network(std::vector<Subsystem> subsystems, std::vector<Coupling> interconnection,
            ModeCoupling coupling = ModeCoupling::independent);

    std::size_t size() const { return subsystems_.size(); }
    const Subsystem& subsystem(std::size_t i) const { return subsystems_.at(i); }
    const std::vector<Subsystem>& subsystems() const { return subsystems_; }
    const std::vector<Coupling>& interconnection() const { return couplings_; }
    ModeCoupling coupling() const { return coupling_; }

    std::size_t total_disturbances() const { return disturbance_offset_.back(); }
    std::size_t total_outputs() const { return output_offset_.back(); }
    std::size_t disturbance_offset(std::size_t i) const { return disturbance_offset_.at(i); }
    std::size_t output_offset(std::size_t i) const { return output_offset_.at(i); }
    std::size_t nonzeros() const;
    std::vector<std::vector<double>> dense_interconnection() const;

private:
    std::vector<Subsystem> subsystems_;
    std::vector<Coupling> couplings_;
    ModeCoupling coupling_;
    std::vector<std::size_t> disturbance_offset_, output_offset_;
};

struct WellPosedness {
    bool well_posed = true;
    /// Per subsystem: smallest slack of the disturbance image inside W.
    std::vector<double> margin;
    /// Interval image of each stacked disturbance.
    std::vector<Interval> disturbance_image;
};

/// Propagates the output image over X through M and checks containment in
/// each W, up to a relative slack of `tol`.
WellPosedness check_well_posed(const Network& net, double tol = 1e-9);

struct RoomParams {
    double theta = 0.005;
    double alpha = 0.06;
    double beta = 0.145;
    double heater_temp = 45.0;
    std::vector<double> outside_temp{-15.0, -20.0};
    std::vector<double> noise_gain{0.3, 0.5};
    std::vector<std::vector<double>> pi{{0.3, 0.7}, {0.4, 0.6}};
    Interval X{1.0, 50.0};
    Interval X0{19.5, 20.0};
    std::vector<Interval> Xu{{1.0, 17.0}, {23.0, 50.0}};
    Interval U{0.0, 1.0};
    ModeCoupling coupling = ModeCoupling::independent;
};

/// Circular building of `rooms` rooms, each coupled to both neighbours.
/// Two rooms degenerate to a single mutual link with W equal to X.
Network room_casestudy(std::size_t rooms, const RoomParams& params = {});

}  // namespace stochcert::model
