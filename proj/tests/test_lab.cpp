#include <catch2/catch.hpp>

#include <schmidt/lab.hpp>
#include <schmidt/strategies.hpp>

#include "test_util.hpp"

#include <cmath>

using namespace schmidt;
using testutil::Rng;

namespace {

const Space kReal1 = Space::real_max(1);

FormalBall rb(Rational center, Rational radius) {
    return FormalBall(euclidean1(std::move(center)), std::move(radius));
}

} // namespace

TEST_CASE("regime classification fixtures", "[lab]") {
    // (i): alpha = beta = 1/5 < (1/2)/(1+1) = 1/4.
    const RegimeLabel i =
        classify_parameters(GameVariant::schmidt(rat(1, 5), rat(1, 5)), rat(1, 2), false);
    CHECK(i.kind == RegimeKind::UndeterminedBernstein_i);
    CHECK(i.reverify());
    CHECK(i.certificate[0].rhs == rat(1, 4));

    // Determined for all S: 1 + 99/200 = 299/200 <= 2*max = 396/200.
    const RegimeLabel det =
        classify_parameters(GameVariant::schmidt(rat(99, 100), rat(1, 2)), rat(1, 2), true);
    CHECK(det.kind == RegimeKind::DeterminedForAllS);
    CHECK(det.reverify());
    CHECK(det.certificate[0].lhs == rat(299, 200));
    CHECK(det.certificate[0].rhs == rat(396, 200));

    // (iii): beta = 1/200 < (c/5)^2 = 1/100.
    const RegimeLabel iii =
        classify_parameters(GameVariant::absolute(rat(1, 200)), rat(1, 2), false);
    CHECK(iii.kind == RegimeKind::UndeterminedBernstein_iii);
    CHECK(iii.reverify());
    CHECK(iii.certificate[0].rhs == rat(1, 100));

    // (ii) on a Banach space when (i) misses.
    const RegimeLabel ii =
        classify_parameters(GameVariant::schmidt(rat(2, 5), rat(1, 5)), rat(1, 2), true);
    CHECK(ii.kind == RegimeKind::UndeterminedBernstein_ii);

    // (iv): playable only through the Banach relaxation.
    const RegimeLabel iv =
        classify_parameters(GameVariant::absolute(rat(1, 5)), rat(1, 2), true);
    CHECK(iv.kind == RegimeKind::UndeterminedBernstein_iv);

    CHECK_THROWS_AS(classify_parameters(GameVariant::absolute(rat(1, 5)), rat(1, 2), false),
                    NotPlayable);
}

TEST_CASE("regime classification is deterministic and never conflicting", "[lab]") {
    Rng rng(41);
    for (int i = 0; i < 500; ++i) {
        const Rational alpha(rng.range(1, 63), 64);
        const Rational beta(rng.range(1, 63), 64);
        const Rational c(rng.range(1, 9), 10);
        const bool banach = rng.flip();
        const GameVariant v = GameVariant::schmidt(alpha, beta);
        const RegimeLabel a = classify_parameters(v, c, banach);
        const RegimeLabel b = classify_parameters(v, c, banach);
        CHECK(a.kind == b.kind);
        CHECK(a.reverify());
        // The determined clause and the (ii) clause are mutually exclusive.
        if (a.kind == RegimeKind::DeterminedForAllS)
            CHECK(1 + alpha * beta <= 2 * rational_max(alpha, beta));
        if (a.kind == RegimeKind::UndeterminedBernstein_ii)
            CHECK(1 + alpha * beta > 2 * rational_max(alpha, beta));
    }
}

TEST_CASE("measure upper bound and its sound cover", "[lab]") {
    const MeasureCover m3 = measure_upper_bound(rat(1, 4), rat(1), 3);
    CHECK(m3.bound == rat(1, 4));
    CHECK(m3.intervals.size() == 8);
    for (const auto& [lo, hi] : m3.intervals) CHECK(hi - lo == 2 * pow_rational(rat(1, 4), 3));

    // M = 0: the bound is the diameter 2*rho.
    CHECK(measure_upper_bound(rat(1, 4), rat(3, 2), 0).bound == rat(3));

    // The bound halves per step for beta = 1/4 (ratio 2*beta = 1/2).
    Rational prev = measure_upper_bound(rat(1, 4), rat(1), 0).bound;
    for (unsigned depth = 1; depth <= 6; ++depth) {
        const Rational cur = measure_upper_bound(rat(1, 4), rat(1), depth).bound;
        CHECK(2 * cur == prev);
        prev = cur;
    }

    // Cover soundness: every depth-(M+5) attractor sample lies inside some
    // depth-M cover interval (exact membership).
    for (const Rational& beta : {rat(1, 4), rat(1, 3), rat(2, 5)}) {
        const MeasureCover cover = measure_upper_bound(beta, rat(1), 3);
        for (const Rational& point : attractor_offsets_line(beta, rat(1), 8)) {
            bool inside = false;
            for (const auto& [lo, hi] : cover.intervals)
                if (lo <= point && point <= hi) inside = true;
            CHECK(inside);
        }
    }
}

TEST_CASE("dimension formula and box-counting estimate", "[lab]") {
    CHECK(dimension_formula(rat(1, 4)) == 0.5); // exact via log2
    CHECK(dimension_formula(rat(1, 8)) == Approx(1.0 / 3).epsilon(1e-12));
    CHECK_THROWS_AS(dimension_formula(rat(1, 2)), PreconditionViolated);
    // Limit check toward the excluded boundary beta -> 1/2.
    CHECK(dimension_formula(rat(499, 1000)) > 0.99);

    const double log3_2 = std::log(2.0) / std::log(3.0);
    CHECK(std::abs(box_counting_estimate(rat(1, 3), 12) - log3_2) <= 0.05);

    // The estimate converges to the formula as the depth grows.
    for (const Rational& beta : {rat(1, 3), rat(1, 4), rat(2, 5)}) {
        const double exact = dimension_formula(beta);
        double err = 1.0;
        for (unsigned depth : {4u, 8u, 16u}) {
            const double cur = std::abs(box_counting_estimate(beta, depth) - exact);
            CHECK(cur < err);
            err = cur;
        }
    }
}

namespace {

// Independent brute-force game value: enumerate every grid play explicitly.
struct BruteResult {
    bool optimistic;
    bool pessimistic;
};

std::vector<Rational> grid_centers(const Rational& center, const Rational& slack,
                                   const Rational& step) {
    std::vector<Rational> out;
    for (BigInt k = ceil_rational((center - slack) / step);
         k <= floor_rational((center + slack) / step); ++k)
        out.push_back(Rational(k) * step);
    return out;
}

BruteResult brute_force_depth2(const DiscreteGameSpec& spec) {
    const Rational x0 = std::get<EuclideanPoint>(spec.initial.center).coords[0];
    const Rational r0 = spec.initial.radius;
    const Rational r1 = spec.variant.alpha * r0;
    const Rational r2 = spec.variant.beta * r1;
    bool best_opt = false, best_pess = false;
    for (const Rational& c1 : grid_centers(x0, r0 - r1, spec.grid_step)) {
        bool all_opt = true, all_pess = true;
        for (const Rational& c2 : grid_centers(c1, r1 - r2, spec.grid_step)) {
            all_opt = all_opt && spec.target.meets(c2 - r2, c2 + r2);
            all_pess = all_pess && spec.target.covers(c2 - r2, c2 + r2);
        }
        best_opt = best_opt || all_opt;
        best_pess = best_pess || all_pess;
    }
    return BruteResult{best_opt, best_pess};
}

} // namespace

TEST_CASE("truncated minimax fixtures and brute-force agreement", "[lab]") {
    DiscreteGameSpec spec{GameVariant::schmidt(rat(1, 2), rat(1, 2)), kReal1, rat(1, 8),
                          rb(rat(0), rat(1)),
                          IntervalUnion{{{rat(0), rat(1, 2)}}},
                          2};

    // Full target: Alice wins in both senses.
    DiscreteGameSpec full = spec;
    full.target = IntervalUnion{{{rat(-2), rat(2)}}};
    const MinimaxValue v_full = truncated_minimax(full);
    CHECK(v_full.result == MinimaxResult::AliceWins);
    CHECK(v_full.optimistic);
    CHECK(v_full.pessimistic);

    // Empty target: Bob wins in both senses.
    DiscreteGameSpec empty = spec;
    empty.target = IntervalUnion{};
    const MinimaxValue v_empty = truncated_minimax(empty);
    CHECK(v_empty.result == MinimaxResult::BobWins);
    CHECK_FALSE(v_empty.optimistic);
    CHECK_FALSE(v_empty.pessimistic);

    // Recorded regression fixture, checked against the brute force.
    const MinimaxValue v = truncated_minimax(spec);
    const BruteResult brute = brute_force_depth2(spec);
    CHECK(v.optimistic == brute.optimistic);
    CHECK(v.pessimistic == brute.pessimistic);
    CHECK(v.optimistic);
    CHECK_FALSE(v.pessimistic);
    CHECK(v.result == MinimaxResult::Gap);

    // Budget enforcement.
    DiscreteGameSpec tiny = spec;
    tiny.node_budget = 3;
    CHECK_THROWS_AS(truncated_minimax(tiny), BudgetExceeded);
}

TEST_CASE("minimax: optimistic dominates pessimistic; refinement is monotone", "[lab]") {
    Rng rng(43);
    for (int i = 0; i < 60; ++i) {
        DiscreteGameSpec spec{GameVariant::schmidt(rat(1, 2), rat(1, 2)), kReal1, rat(1, 4),
                              rb(Rational(rng.range(-2, 2), 4), rat(1)),
                              IntervalUnion{{{Rational(rng.range(-8, 0), 8),
                                              Rational(rng.range(0, 8), 8)}}},
                              1 + rng.below(3)};
        const MinimaxValue v = truncated_minimax(spec);
        if (v.pessimistic) CHECK(v.optimistic);

        if (v.pessimistic) {
            // Refining the grid or deepening the game never hands Bob a
            // certified win once Alice has a pessimistic one.
            DiscreteGameSpec finer = spec;
            finer.grid_step = spec.grid_step / 2;
            CHECK(truncated_minimax(finer).result != MinimaxResult::BobWins);
            DiscreteGameSpec deeper = spec;
            deeper.depth += 2;
            CHECK(truncated_minimax(deeper).result != MinimaxResult::BobWins);
        }
    }
}

TEST_CASE("chaser force contrast across regimes", "[lab]") {
    // Determined regime with large alpha: the chaser pins a reachable point
    // and the final ball lies inside the point-interval target (pessimistic
    // Alice win in the transcript sense).
    const GameVariant det = GameVariant::schmidt(rat(9, 10), rat(1, 2));
    CHECK(classify_parameters(det, rat(1, 2), true).kind == RegimeKind::DeterminedForAllS);
    const Point goal = euclidean1(rat(1, 10));
    const IntervalUnion window{{{rat(1, 10) - rat(1, 100), rat(1, 10) + rat(1, 100)}}};
    const Transcript pinned =
        run_game(det, kReal1, target_chaser(goal, PlayerRole::Alice),
                 min_radius(det, PlayerRole::Bob), rb(rat(0), rat(1)), 30);
    const FormalBall enc = pinned.enclosure();
    const Rational x = std::get<EuclideanPoint>(enc.center).coords[0];
    CHECK(window.covers(x - enc.radius, x + enc.radius));

    // Regime (i) against an avoiding Bob: the chaser provably misses.
    const GameVariant small = GameVariant::schmidt(rat(1, 5), rat(1, 5));
    CHECK(classify_parameters(small, rat(1, 2), true).kind ==
          RegimeKind::UndeterminedBernstein_i);
    const Transcript missed =
        run_game(small, kReal1, target_chaser(goal, PlayerRole::Alice),
                 schmidt_avoid_point(goal, rat(1, 2), PlayerRole::Bob), rb(rat(0), rat(1)), 30);
    const FormalBall enc2 = missed.enclosure();
    CHECK(distance(kReal1, enc2.center, goal) > enc2.radius); // goal excluded
}
