// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stochcert/poly/nonneg.hpp"

using namespace stochcert::poly;

namespace {

double grid_min(const Polynomial& p, const Box& box, int n) {
    double best = 1e300;
    std::vector<double> pt(p.space()->size(), 0.0);
    const auto& b = box.bounds;
    if (box.dim() == 1) {
        for (int i = 0; i <= n; ++i) {
            pt[box.vars[0]] = b[0].lo + b[0].width() * i / n;
            best = std::min(best, p.eval(pt));
        }
        return best;
    }
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            pt[box.vars[0]] = b[0].lo + b[0].width() * i / n;
            pt[box.vars[1]] = b[1].lo + b[1].width() * j / n;
            best = std::min(best, p.eval(pt));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("simple certificates", "[nonneg]") {
    auto sp = VarSpace::standard(1, 0, 0, 0);
    auto x = Polynomial::variable(sp, 0);
    Box box({0}, {{-1.0, 1.0}});
    auto ok = prove_nonneg(x * x, Region(box));
    CHECK(ok.verdict == Verdict::proved);
    CHECK(ok.bound >= -1e-6);

    auto bad = prove_nonneg(x * x - Polynomial::constant(sp, 0.01), Region(box));
    REQUIRE(bad.verdict == Verdict::counterexample);
    CHECK(bad.value < -1e-6);
    CHECK(bad.value == (x * x).eval(bad.point) - 0.01);
    CHECK(std::abs(bad.point[0]) <= 1.0);
}

TEST_CASE("minimum on a box face is found", "[nonneg]") {
    auto sp = VarSpace::standard(2, 0, 0, 0);
    auto x = Polynomial::variable(sp, 0);
    auto y = Polynomial::variable(sp, 1);
    // Minimum -1e-3 at the corner (1, 1) only.
    auto p = (x * y).scale(-1.0).add_constant(1.0 - 1e-3);
    auto out = prove_nonneg(p, Region(Box({0, 1}, {{0.0, 1.0}, {0.0, 1.0}})));
    CHECK(out.verdict == Verdict::counterexample);
}

TEST_CASE("union regions check every member", "[nonneg]") {
    auto sp = VarSpace::standard(1, 0, 0, 0);
    auto x = Polynomial::variable(sp, 0);
    Region r(std::vector<Box>{Box({0}, {{1.0, 17.0}}), Box({0}, {{23.0, 50.0}})});
    CHECK(prove_nonneg(x - Polynomial::constant(sp, 0.5), r).verdict == Verdict::proved);
    auto out = prove_nonneg(Polynomial::constant(sp, 30.0) - x, r);
    REQUIRE(out.verdict == Verdict::counterexample);
    CHECK(out.point[0] > 30.0);
}

TEST_CASE("prover verdicts agree with grid minimization", "[nonneg][property]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> c(-1.0, 1.0), lo(-2.0, 1.0), wid(0.2, 2.0);
    int proved = 0, refuted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t dim = trial % 2 ? 2 : 1;
        auto sp = VarSpace::standard(dim, 0, 0, 0);
        std::vector<std::size_t> vars(dim);
        std::vector<Interval> bounds;
        for (std::size_t d = 0; d < dim; ++d) {
            vars[d] = d;
            const double a = lo(rng);
            bounds.push_back({a, a + wid(rng)});
        }
        Polynomial::Terms t;
        for (const auto& e : monomials_up_to(dim, vars, 4)) {
            t[e] = c(rng);
        }
        Polynomial p(sp, t);
        Box box(vars, bounds);
        const double gmin = grid_min(p, box, dim == 1 ? 2000 : 120);
        // Shift so the true minimum sits near zero on either side.
        p = p.add_constant(-gmin + 0.05 * c(rng));
        ProofBudget budget;
        budget.max_leaves = 20000;
        auto out = prove_nonneg(p, Region(box), 1e-6, budget);
        const double shifted = grid_min(p, box, dim == 1 ? 2000 : 120);
        if (out.verdict == Verdict::proved) {
            ++proved;
            REQUIRE(shifted >= -1e-6);
        } else if (out.verdict == Verdict::counterexample) {
            ++refuted;
            REQUIRE(box.contains_point(out.point));
            REQUIRE(p.eval(out.point) < -1e-6);
        }
    }
    CHECK(proved > 50);
    CHECK(refuted > 50);
}
