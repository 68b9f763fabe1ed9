#include <catch2/catch.hpp>

#include <schmidt/attractor.hpp>
#include <schmidt/strategies.hpp>

#include "test_util.hpp"

using namespace schmidt;
using testutil::Rng;

namespace {

const Space kReal1 = Space::real_max(1);
const Space kReal2 = Space::real_max(2);

FormalBall rb(Rational center, Rational radius) {
    return FormalBall(euclidean1(std::move(center)), std::move(radius));
}

Rational coord(const Point& p) { return std::get<EuclideanPoint>(p).coords[0]; }

// Positive value means the ball excludes y with exactly that margin.
Rational exclusion_margin(const Space& s, const FormalBall& ball, const Point& y) {
    return distance(s, ball.center, y) - ball.radius;
}

} // namespace

TEST_CASE("min radius keeps the center and the forced schedule", "[strategies]") {
    const GameVariant strong = GameVariant::strong(rat(1, 2), rat(1, 2));
    const Transcript t1 = run_game(strong, kReal1, min_radius(strong, PlayerRole::Alice),
                                   min_radius(strong, PlayerRole::Bob), rb(rat(0), rat(1)), 1);
    CHECK(t1.moves[1].ball == rb(rat(0), rat(1, 2)));

    // Schmidt(1/3,1/5): each full round scales the radius by 1/15 exactly.
    const GameVariant v = GameVariant::schmidt(rat(1, 3), rat(1, 5));
    const Transcript t = run_game(v, kReal1, min_radius(v, PlayerRole::Alice),
                                  min_radius(v, PlayerRole::Bob), rb(rat(0), rat(1)), 10);
    for (int k = 0; k <= 5; ++k)
        CHECK(t.moves[2 * k].ball.radius == pow_rational(rat(1, 15), k));
}

TEST_CASE("absolute bob minimal reply is legal with radius exactly beta*rho", "[strategies]") {
    const GameVariant v = GameVariant::absolute(rat(1, 10));
    const std::vector<Move> h{Move::play(rb(rat(0), rat(1))),
                              Move::erase(rb(rat(0), rat(1, 10)))};
    const GameContext ctx{v, kReal1, h};
    const Move reply = min_radius(v, PlayerRole::Bob).next(ctx);
    CHECK(reply.ball.radius == rat(1, 10));
    CHECK(validate_move(v, kReal1, h, reply).ok);

    // Banach regime: beta above c/5 = 1/10 still has a legal minimal reply.
    const GameVariant banach = GameVariant::absolute(rat(3, 10));
    const std::vector<Move> h2{Move::play(rb(rat(0), rat(1))),
                               Move::erase(rb(rat(1, 5), rat(3, 10)))};
    const GameContext ctx2{banach, kReal1, h2};
    const Move reply2 = min_radius(banach, PlayerRole::Bob).next(ctx2);
    CHECK(reply2.ball.radius == rat(3, 10));
    CHECK(validate_move(banach, kReal1, h2, reply2).ok);
}

TEST_CASE("avoid-point strategy: worked example and margins", "[strategies]") {
    // c = 1/2, alpha = 1/5, ball (0,1), y = 0: shell point z has
    // c(1-2a)rho = 3/10 < |z| <= 3/5 and the move excludes y by d - rho' > 0.
    const GameVariant v = GameVariant::schmidt(rat(1, 5), rat(1, 5));
    const Point y = euclidean1(rat(0));
    const auto alice = schmidt_avoid_point(y, rat(1, 2), PlayerRole::Alice);
    const std::vector<Move> h{Move::play(rb(rat(0), rat(1)))};
    const Move move = alice.next(GameContext{v, kReal1, h});
    const Rational z = coord(move.ball.center);
    CHECK(rational_abs(z) > rat(3, 10));
    CHECK(rational_abs(z) <= rat(3, 5));
    CHECK(move.ball.radius == rat(1, 5));
    CHECK(validate_move(v, kReal1, h, move).ok);
    CHECK(exclusion_margin(kReal1, move.ball, y) > 0);

    // y outside B(x, alpha*rho): keep the center.
    const auto alice2 =
        schmidt_avoid_point(euclidean1(rat(9, 10)), rat(1, 2), PlayerRole::Alice);
    const Move keep = alice2.next(GameContext{v, kReal1, h});
    CHECK(keep.ball == rb(rat(0), rat(1, 5)));

    // Factor at or above c/(1+2c) is rejected.
    const GameVariant big = GameVariant::schmidt(rat(1, 4), rat(1, 5));
    const auto bad = schmidt_avoid_point(y, rat(1, 2), PlayerRole::Alice);
    CHECK_THROWS_AS(bad.next(GameContext{big, kReal1, h}), PreconditionViolated);
}

TEST_CASE("avoid-point excludes y across whole games with positive margin", "[strategies]") {
    const Point y = euclidean1(rat(1, 8));
    for (int seed = 0; seed < 30; ++seed) {
        const GameVariant v = GameVariant::schmidt(rat(1, 5), rat(1, 6));
        const auto alice = schmidt_avoid_point(y, rat(1, 2), PlayerRole::Alice);
        const Transcript t = run_game(v, kReal1, alice, random_legal(PlayerRole::Bob, seed),
                                      rb(rat(0), rat(1)), 10);
        // Transcript audit: every Alice ball excludes y outright.
        for (std::size_t i = 1; i < t.moves.size(); i += 2)
            CHECK(exclusion_margin(kReal1, t.moves[i].ball, y) > 0);
        CHECK(exclusion_margin(kReal1, t.enclosure(), y) > 0);
    }
}

TEST_CASE("center deletion forces rho_{n+1} < rho_n / 2", "[strategies]") {
    const GameVariant v = GameVariant::absolute(rat(1, 10));
    const std::vector<Move> h{Move::play(rb(rat(0), rat(1)))};
    const Move del = absolute_center_delete().next(GameContext{v, kReal1, h});
    CHECK(del.kind == Move::Kind::Delete);
    CHECK(del.ball == rb(rat(0), rat(1, 10)));

    for (int seed = 0; seed < 25; ++seed) {
        const Transcript t =
            run_game(v, kReal1, absolute_center_delete(), random_legal(PlayerRole::Bob, seed),
                     rb(rat(0), rat(1)), 10);
        Rational prev = t.moves[0].ball.radius;
        int bob_moves = 0;
        for (std::size_t i = 2; i < t.moves.size(); i += 2) {
            const Rational cur = t.moves[i].ball.radius;
            CHECK(2 * cur < prev);
            CHECK(cur <= pow_rational(rat(1, 2), ++bob_moves) * t.moves[0].ball.radius);
            prev = cur;
        }
    }
}

TEST_CASE("absolute avoid-point deletes y or falls back to the center", "[strategies]") {
    const GameVariant v = GameVariant::absolute(rat(1, 10));
    const Point y = euclidean1(rat(1, 4));

    const std::vector<Move> inside{Move::play(rb(rat(0), rat(1)))};
    const Move d1 = absolute_avoid_point(y).next(GameContext{v, kReal1, inside});
    CHECK(d1.ball.center == y);
    CHECK(d1.ball.radius == rat(1, 10));

    // y = Bob's center coincides with plain center deletion.
    const Move d2 =
        absolute_avoid_point(euclidean1(rat(0))).next(GameContext{v, kReal1, inside});
    CHECK(d2.ball == absolute_center_delete().next(GameContext{v, kReal1, inside}).ball);

    // y outside Bob's ball: fall back, y stays excluded trivially.
    const std::vector<Move> far{Move::play(rb(rat(10), rat(1)))};
    const Move d3 = absolute_avoid_point(y).next(GameContext{v, kReal1, far});
    CHECK(d3.ball.center == euclidean1(rat(10)));

    // Whole games end with the enclosure excluding y.
    const Transcript t = run_game(v, kReal1, absolute_avoid_point(y),
                                  min_radius(v, PlayerRole::Bob), rb(rat(0), rat(1)), 8);
    CHECK(exclusion_margin(kReal1, t.enclosure(), y) > 0);
}

TEST_CASE("banach bob candidates: gap identity and all-plus outcome", "[strategies]") {
    // distance(B(x+(1-b)rho v, b rho), B(x-(1-b)rho v, b rho)) = 2(1-2b)rho.
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const Rational beta(rng.range(1, 21), 64); // < 1/3
        const Rational rho(rng.range(1, 64), 16);
        const Rational gap = 2 * (1 - beta) * rho - 2 * beta * rho;
        CHECK(gap == 2 * (1 - 2 * beta) * rho);
        CHECK(gap > 2 * beta * rho);
    }

    // All-plus play: when Alice always blocks the -v candidate, Bob's balls
    // telescope so that center + radius equals the right endpoint exactly.
    const GameVariant v = GameVariant::absolute(rat(1, 4));
    const Strategy block_minus{"block-minus", PlayerRole::Alice, [](const GameContext& ctx) {
                                   const FormalBall& bob = ctx.history.back().ball;
                                   EuclideanPoint z = std::get<EuclideanPoint>(bob.center);
                                   z.coords[0] -= (1 - ctx.variant.beta) * bob.radius;
                                   return Move::erase(
                                       FormalBall(Point(z), ctx.variant.beta * bob.radius));
                               }};
    const Transcript t =
        run_game(v, kReal1, block_minus,
                 banach_bob_avoid(std::get<EuclideanPoint>(euclidean1(rat(7))), 0),
                 rb(rat(0), rat(1)), 14);
    const FormalBall& anchor = t.moves[2].ball; // Bob's phase-one ball
    for (std::size_t i = 4; i < t.moves.size(); i += 2) {
        const FormalBall& b = t.moves[i].ball;
        CHECK(coord(b.center) + b.radius == coord(anchor.center) + anchor.radius);
    }
}

TEST_CASE("banach bob avoids x0 with certified attractor margin", "[strategies]") {
    const GameVariant v = GameVariant::absolute(rat(1, 4));
    const EuclideanPoint x0 = std::get<EuclideanPoint>(euclidean1(rat(0)));

    for (int seed = 0; seed < 20; ++seed) {
        const Strategy alice = seed % 2 == 0 ? absolute_avoid_point(Point(x0))
                                             : random_legal(PlayerRole::Alice, seed);
        const Transcript t =
            run_game(v, kReal1, alice, banach_bob_avoid(x0, 0), rb(rat(0), rat(1)), 12);

        // Direct transcript audit: the enclosure excludes x0 exactly.
        CHECK(exclusion_margin(kReal1, t.enclosure(), Point(x0)) > 0);

        // Oracle: attractor bounds anchored at Bob's phase-one ball certify
        // dist(x0, every possible continuation) > 0 at depth = horizon.
        const FormalBall& anchor = t.moves[2].ball;
        const AttractorSpec spec(std::get<EuclideanPoint>(anchor.center), {rat(1)}, v.beta,
                                 anchor.radius);
        const DistanceBounds bounds = attractor_distance_bounds(spec, x0, 12);
        CHECK(bounds.lower > 0);
        CHECK(bounds.lower <= bounds.upper);
    }

    // d >= 2: the phase-one center leaves the line x0 + R e1.
    const EuclideanPoint origin2(std::vector<Rational>{rat(0), rat(0)});
    const Transcript t2 =
        run_game(GameVariant::absolute(rat(1, 4)), kReal2,
                 absolute_avoid_point(Point(origin2)), banach_bob_avoid(origin2, 0),
                 FormalBall(Point(origin2), rat(1)), 12);
    const auto& anchor2 = std::get<EuclideanPoint>(t2.moves[2].ball.center);
    CHECK(anchor2.coords[1] != 0); // off the e1 line through the origin
    CHECK(exclusion_margin(kReal2, t2.enclosure(), Point(origin2)) > 0);
}

TEST_CASE("attractor distance bounds: frozen values and refinement", "[strategies]") {
    // beta = 1/4, rho = 1, q = x0, M = 1: prefix centers +-3/4, tail 1/4.
    const AttractorSpec spec(EuclideanPoint(rat(0)), {rat(1)}, rat(1, 4), rat(1));
    const EuclideanPoint q0(rat(0));
    const DistanceBounds m1 = attractor_distance_bounds(spec, q0, 1);
    CHECK(m1.lower == rat(1, 2));
    CHECK(m1.upper == rat(1, 2)); // the all-minus point of the + branch sits at 1/2

    // q on the attractor: the all-plus point x0 + rho*v keeps lower at zero.
    const EuclideanPoint on(rat(1));
    for (unsigned depth : {0u, 1u, 4u, 8u}) {
        const DistanceBounds b = attractor_distance_bounds(spec, on, depth);
        CHECK(b.lower == 0);
        CHECK(b.upper == 0);
    }

    // Monotone refinement on random rational points.
    Rng rng(37);
    for (int i = 0; i < 40; ++i) {
        const EuclideanPoint q(Rational(rng.range(-40, 40), 16));
        Rational lower = -1, upper = rat(1000);
        for (unsigned depth = 0; depth <= 8; depth += 2) {
            const DistanceBounds b = attractor_distance_bounds(spec, q, depth);
            CHECK(b.lower >= lower);
            CHECK(b.upper <= upper);
            CHECK(b.lower <= b.upper);
            lower = b.lower;
            upper = b.upper;
        }
    }

    // Any point built from an explicit sign sequence (finite signs, then an
    // all-plus tail) is an attractor point: lower stays 0 at enough depth.
    for (int i = 0; i < 25; ++i) {
        std::vector<int> signs;
        const unsigned len = 1 + rng.below(6);
        for (unsigned m = 0; m < len; ++m) signs.push_back(rng.flip() ? 1 : -1);
        EuclideanPoint q = spec.prefix_center(signs);
        q.coords[0] += pow_rational(spec.beta, len) * spec.rho; // all-plus tail
        for (unsigned depth : {len, len + 3}) {
            const DistanceBounds b = attractor_distance_bounds(spec, q, depth);
            CHECK(b.lower == 0);
            CHECK(b.upper == 0);
        }
    }
}

TEST_CASE("target chaser: fixed point, strong pull, and adversarial loss", "[strategies]") {
    // t at the current center: the center never moves and the outcome is t.
    const GameVariant v = GameVariant::schmidt(rat(1, 2), rat(1, 2));
    const Point t0 = euclidean1(rat(1, 4));
    const Transcript fixed =
        run_game(v, kReal1, target_chaser(t0, PlayerRole::Alice),
                 min_radius(v, PlayerRole::Bob), rb(rat(1, 4), rat(1)), 8);
    for (const Move& m : fixed.moves) CHECK(m.ball.center == t0);
    CHECK(outcome(fixed, target_point(t0)).winner == Winner::Alice);

    // Alpha = 9/10 chaser: the per-move budget is (1-alpha)*rho, so the total
    // reach against a center-keeping Bob is (1-a)/(1-a*b) = 2/11 of the opening
    // radius; a target inside that reach is captured exactly and the enclosure
    // shrinks well under 1/1000 within twenty rounds.
    const GameVariant big = GameVariant::schmidt(rat(9, 10), rat(1, 2));
    const Point goal = euclidean1(rat(1, 10));
    const Transcript chased =
        run_game(big, kReal1, target_chaser(goal, PlayerRole::Alice),
                 min_radius(big, PlayerRole::Bob), rb(rat(0), rat(1)), 40);
    CHECK(distance(kReal1, chased.enclosure().center, goal) + chased.enclosure().radius <
          rat(1, 1000));
    CHECK(chased.enclosure().center == goal); // captured exactly, then pinned

    // Small alpha against an avoider: the chaser provably fails.
    const GameVariant small = GameVariant::schmidt(rat(1, 10), rat(1, 5));
    const Point edge = euclidean1(rat(9, 10));
    const Transcript lost =
        run_game(small, kReal1, target_chaser(edge, PlayerRole::Alice),
                 schmidt_avoid_point(edge, rat(1, 2), PlayerRole::Bob), rb(rat(0), rat(1)), 12);
    CHECK(exclusion_margin(kReal1, lost.enclosure(), edge) > 0);

    // Target outside the opening ball aborts the run gracefully.
    const Transcript aborted =
        run_game(v, kReal1, target_chaser(euclidean1(rat(5)), PlayerRole::Alice),
                 min_radius(v, PlayerRole::Bob), rb(rat(0), rat(1)), 4);
    CHECK(aborted.moves.size() == 1);
    CHECK_FALSE(aborted.aborted_by.empty());
}

namespace {

// Good turn: move n crossed some threshold (rho_n < 4^-k <= rho_{n-1}).
bool crossed_threshold(const Rational& before, const Rational& after) {
    Rational power = 1;
    while (power > before) power /= 4;
    return after < power && power <= before;
}

// Whether the copy-unless-cross player can cross at radius rho.
bool crossable(const Rational& rho) {
    Rational power = 1;
    while (power > rho) power /= 4;
    return 2 * power > rho;
}

} // namespace

TEST_CASE("threshold control owns every good turn after its first chance", "[strategies]") {
    const Space space = Space::binary_seq();
    const GameVariant v = GameVariant::strong(rat(1, 2), rat(1, 2));
    const FormalBall initial(binseq("0", '0'), rat(1));

    // Exhaustive opening: radius 1 makes the k=0 threshold immediately
    // crossable, so Alice's first move crosses and rewrites digits 1.. to 1.
    const auto controller = threshold_control(PlayerRole::Alice, '1');
    const Transcript opening =
        run_game(v, space, controller, copy_radius(PlayerRole::Bob), initial, 3);
    CHECK(opening.moves[1].ball.radius < 1);
    CHECK(crossed_threshold(opening.moves[0].ball.radius, opening.moves[1].ball.radius));
    const auto& c1 = std::get<BinarySeqPoint>(opening.moves[1].ball.center);
    CHECK(c1.digit(0) == '0'); // frozen digit from Bob's opening ball
    CHECK(c1.digit(1) == '1');
    CHECK(c1.tail == '1');

    // Copy-only game: constant radii, non-shrinking outcome.
    const Transcript stall = run_game(v, space, copy_radius(PlayerRole::Alice),
                                      copy_radius(PlayerRole::Bob), initial, 16);
    for (const Move& m : stall.moves) CHECK(m.ball.radius == 1);
    CHECK_FALSE(outcome(stall, target_everything()).limit_known_zero);

    // Against copycat and random legal opponents, every good turn after the
    // controller's first opportunity belongs to the controller.
    for (int seed = 0; seed < 12; ++seed) {
        const Strategy opponent =
            seed % 3 == 0 ? copy_radius(PlayerRole::Bob) : random_legal(PlayerRole::Bob, seed);
        const Transcript t = run_game(v, space, controller, opponent, initial, 16);
        bool opportunity_seen = false;
        for (std::size_t i = 1; i < t.moves.size(); ++i) {
            const bool alice_turn = mover_of(i + 1) == PlayerRole::Alice;
            if (alice_turn && crossable(t.moves[i - 1].ball.radius)) opportunity_seen = true;
            if (crossed_threshold(t.moves[i - 1].ball.radius, t.moves[i].ball.radius) &&
                opportunity_seen)
                CHECK(alice_turn);
        }
    }

    // Against the pure copycat the game stalls after the single crossing (the
    // "outcome not in Z" branch): radii go constant and exactly one good turn
    // ever happens, with its digit set as desired.
    const Transcript vs_copy =
        run_game(v, space, controller, copy_radius(PlayerRole::Bob), initial, 16);
    int crossings = 0;
    for (std::size_t i = 1; i < vs_copy.moves.size(); ++i)
        if (crossed_threshold(vs_copy.moves[i - 1].ball.radius, vs_copy.moves[i].ball.radius))
            ++crossings;
    CHECK(crossings == 1);
    CHECK(vs_copy.last_ball().radius == vs_copy.moves[1].ball.radius);

    // A shrinking opponent (minimal radius) hands the controller a crossing
    // every round: all digits beyond the frozen prefix equal the desired one.
    const Transcript t16 =
        run_game(v, space, controller, min_radius(v, PlayerRole::Bob), initial, 16);
    const auto& last = std::get<BinarySeqPoint>(t16.last_ball().center);
    const unsigned depth = binseq_cylinder_depth(t16.last_ball().radius);
    CHECK(depth >= 4); // several thresholds actually crossed
    for (unsigned i = 1; i < depth + 2; ++i) CHECK(last.digit(i) == '1');
}

TEST_CASE("every named strategy stays legal against random opponents", "[strategies]") {
    // run_game validates each move, so surviving the sweep is the property.
    int games = 0;
    for (int seed = 0; seed < 250; ++seed) {
        const GameVariant schmidt_v = GameVariant::schmidt(rat(1, 5), rat(1, 5));
        run_game(schmidt_v, kReal1, min_radius(schmidt_v, PlayerRole::Alice),
                 random_legal(PlayerRole::Bob, seed), rb(rat(0), rat(1)), 8);
        run_game(schmidt_v, kReal1,
                 schmidt_avoid_point(euclidean1(Rational(seed % 16, 16)), rat(1, 2),
                                     PlayerRole::Alice),
                 random_legal(PlayerRole::Bob, seed), rb(rat(0), rat(1)), 8);
        run_game(schmidt_v, kReal1, random_legal(PlayerRole::Alice, seed),
                 schmidt_avoid_point(euclidean1(rat(0)), rat(1, 2), PlayerRole::Bob),
                 rb(rat(0), rat(1)), 8);
        games += 3;

        const GameVariant strong_v = GameVariant::strong(rat(1, 3), rat(1, 4));
        run_game(strong_v, kReal1, random_legal(PlayerRole::Alice, seed),
                 min_radius(strong_v, PlayerRole::Bob), rb(rat(0), rat(1)), 8);
        run_game(strong_v, kReal1, target_chaser(euclidean1(rat(1, 3)), PlayerRole::Alice),
                 random_legal(PlayerRole::Bob, seed), rb(rat(0), rat(1)), 8);
        games += 2;

        const GameVariant abs_v = GameVariant::absolute(rat(1, 12));
        run_game(abs_v, kReal1, absolute_center_delete(), random_legal(PlayerRole::Bob, seed),
                 rb(rat(0), rat(1)), 8);
        run_game(abs_v, kReal1, random_legal(PlayerRole::Alice, seed),
                 min_radius(abs_v, PlayerRole::Bob), rb(rat(0), rat(1)), 8);
        run_game(abs_v, kReal1, random_legal(PlayerRole::Alice, seed),
                 banach_bob_avoid(std::get<EuclideanPoint>(euclidean1(rat(0))), 0),
                 rb(rat(0), rat(1)), 8);
        games += 3;

        // Remaining spaces at their declared constants.
        const GameVariant cantor_v = GameVariant::schmidt(rat(1, 24), rat(1, 24));
        run_game(cantor_v, Space::cantor_ternary(),
                 schmidt_avoid_point(cantor("02"), rat(1, 9), PlayerRole::Alice),
                 random_legal(PlayerRole::Bob, seed), FormalBall(cantor(""), rat(1)), 6);
        const GameVariant bin_v = GameVariant::strong(rat(1, 2), rat(1, 2));
        run_game(bin_v, Space::binary_seq(), threshold_control(PlayerRole::Alice, '1'),
                 random_legal(PlayerRole::Bob, seed), FormalBall(binseq("", '0'), rat(1)), 8);
        games += 2;
    }
    CHECK(games == 2500);
}
