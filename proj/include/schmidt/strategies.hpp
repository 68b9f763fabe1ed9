#pragma once

// Every explicit strategy from the indeterminacy constructions, as named,
// parameterized move functions. All strategies are pure: the move is a
// function of (variant, space, history) only, so games replay byte-for-byte.

#include <schmidt/attractor.hpp>
#include <schmidt/game.hpp>
#include <schmidt/geometry.hpp>

#include <random>
#include <string>
#include <vector>

namespace schmidt {

namespace detail {

inline Rational role_factor(const GameVariant& v, PlayerRole role) {
    return role == PlayerRole::Alice ? v.alpha : v.beta;
}

inline void require_variant(const GameContext& ctx, bool schmidt_ok, bool strong_ok,
                            bool absolute_ok, const char* who) {
    const auto k = ctx.variant.kind;
    const bool ok = (k == GameVariant::Kind::Schmidt && schmidt_ok) ||
                    (k == GameVariant::Kind::Strong && strong_ok) ||
                    (k == GameVariant::Kind::Absolute && absolute_ok);
    if (!ok)
        throw PreconditionViolated(std::string(who) + " does not support the " +
                                   ctx.variant.name() + " game");
}

// A legal minimal-radius reply for absolute-game Bob. On RealMax the two
// axis extremes x +- (1-beta)rho e_i cannot both be blocked for beta < 1/3
// (their gap 2(1-2beta)rho exceeds the deletion's blocked width); elsewhere
// beta < c/5 holds and the picker's center works at radius beta*rho.
inline Move absolute_bob_min_move(const GameContext& ctx) {
    const FormalBall& own = ctx.history[ctx.history.size() - 2].ball;
    const FormalBall& deletion = ctx.history.back().ball;
    const Rational radius = ctx.variant.beta * own.radius;
    if (ctx.space.kind == SpaceKind::RealMax) {
        const auto& x = detail::as_euclidean(ctx.space, own.center);
        const Rational reach = own.radius - radius;
        for (const int denom : {1, 2, 4}) {
            for (int axis = 0; axis < ctx.space.dim; ++axis) {
                for (int sign : {+1, -1}) {
                    EuclideanPoint z = x;
                    z.coords[axis] += sign * reach / denom;
                    const Move candidate = Move::play(FormalBall(Point(z), radius));
                    if (validate_move(ctx.variant, ctx.space, ctx.history, candidate).ok)
                        return candidate;
                }
            }
        }
        throw NotFound("absolute bob: no legal minimal-radius reply");
    }
    const FormalBall picked =
        disjoint_ball_picker(ctx.space, own, deletion, ctx.space.perfectness);
    return Move::play(FormalBall(picked.center, radius));
}

} // namespace detail

// Smallest legal radius each turn; centers stay put (Schmidt/strong) or come
// from the disjoint-ball search (absolute Bob).
inline Strategy min_radius(const GameVariant& variant, PlayerRole role) {
    if (variant.kind == GameVariant::Kind::Absolute && role == PlayerRole::Alice)
        throw PreconditionViolated("min_radius is not defined for the absolute deleter");
    return Strategy{
        "min-radius", role, [role](const GameContext& ctx) -> Move {
            if (ctx.variant.kind == GameVariant::Kind::Absolute)
                return detail::absolute_bob_min_move(ctx);
            const FormalBall& prev = ctx.history.back().ball;
            return Move::play(
                FormalBall(prev.center, detail::role_factor(ctx.variant, role) * prev.radius));
        }};
}

// Keeps both radius and center (legal in the strong game only).
inline Strategy copy_radius(PlayerRole role) {
    return Strategy{"copy-radius", role, [](const GameContext& ctx) -> Move {
                        detail::require_variant(ctx, false, true, false, "copy-radius");
                        return Move::play(ctx.history.back().ball);
                    }};
}

// Avoids the point y in the Schmidt/strong game, factor gamma < c/(1+2c):
// keep the center when y is already outside B(x, gamma*rho), otherwise move
// to a shell point z with c(1-2g)rho < d(z,y) <= (1-2g)rho, which is legal
// (d(z,x) <= (1-g)rho) and excludes y with margin >= (c(1-2g)-g)*rho.
inline Strategy schmidt_avoid_point(Point y, Rational c, PlayerRole role) {
    std::string label = "avoid-point(y=" + format_point(y) + ",c=" + format_rational(c) + ")";
    return Strategy{
        std::move(label), role, [y, c, role](const GameContext& ctx) -> Move {
            detail::require_variant(ctx, true, true, false, "avoid-point");
            const Rational gamma = detail::role_factor(ctx.variant, role);
            if (gamma >= c / (1 + 2 * c))
                throw PreconditionViolated("avoid-point needs factor < c/(1+2c), got " +
                                           format_rational(gamma));
            const FormalBall& prev = ctx.history.back().ball;
            const Rational radius = gamma * prev.radius;
            if (distance(ctx.space, prev.center, y) > radius)
                return Move::play(FormalBall(prev.center, radius));
            const Point z =
                uniform_perfect_witness(ctx.space, y, (1 - 2 * gamma) * prev.radius, c);
            return Move::play(FormalBall(z, radius));
        }};
}

// Absolute-game Alice: delete B(x_n, beta*rho_n), the maximal legal deletion
// at Bob's center. Every legal reply then satisfies rho_{n+1} < rho_n / 2.
inline Strategy absolute_center_delete() {
    return Strategy{"center-delete", PlayerRole::Alice, [](const GameContext& ctx) -> Move {
                        detail::require_variant(ctx, false, false, true, "center-delete");
                        const FormalBall& bob = ctx.history.back().ball;
                        return Move::erase(FormalBall(bob.center, ctx.variant.beta * bob.radius));
                    }};
}

// Absolute-game Alice: delete around y while it sits in Bob's ball, otherwise
// fall back to center deletion.
inline Strategy absolute_avoid_point(Point y) {
    return Strategy{"absolute-avoid(y=" + format_point(y) + ")", PlayerRole::Alice,
                    [y](const GameContext& ctx) -> Move {
                        detail::require_variant(ctx, false, false, true, "absolute-avoid");
                        const FormalBall& bob = ctx.history.back().ball;
                        const Rational radius = ctx.variant.beta * bob.radius;
                        if (ball_contains_point(ctx.space, bob, y))
                            return Move::erase(FormalBall(y, radius));
                        return Move::erase(FormalBall(bob.center, radius));
                    }};
}

namespace detail {

// Max-norm distance from z to the line x0 + R*e_axis.
inline Rational distance_to_axis_line(const EuclideanPoint& z, const EuclideanPoint& x0,
                                      int axis) {
    Rational best = 0;
    for (int i = 0; i < z.dim(); ++i) {
        if (i == axis) continue;
        best = rational_max(best, rational_abs(z.coords[i] - x0.coords[i]));
    }
    return best;
}

} // namespace detail

// Absolute-game Bob avoiding x0 on RealMax(d), beta < 1/3.
//
// Phase one (Bob's first strategic ball): pick a center whose attractor
// S_{beta*rho} anchored at the center misses x0 - off the line x0 + R*v when
// d >= 2, certified by attractor_distance_bounds when d = 1. Phase two: of
// the two candidate balls B(x_n +- (1-beta) rho_n v, beta rho_n), play the
// one disjoint from Alice's deletion (their gap 2(1-2beta)rho exceeds the
// deletion's diameter, so at most one is blocked); ties prefer +v.
inline Strategy banach_bob_avoid(EuclideanPoint x0, int axis = 0) {
    return Strategy{
        "banach-avoid(x0=" + format_point(Point(x0)) + ",v=e" + std::to_string(axis + 1) + ")",
        PlayerRole::Bob, [x0, axis](const GameContext& ctx) -> Move {
            detail::require_variant(ctx, false, false, true, "banach-avoid");
            if (ctx.space.kind != SpaceKind::RealMax)
                throw PreconditionViolated("banach-avoid needs a RealMax space");
            const Rational& beta = ctx.variant.beta;
            if (beta >= Rational(1, 3))
                throw PreconditionViolated("banach-avoid needs beta < 1/3");
            if (axis < 0 || axis >= ctx.space.dim)
                throw PreconditionViolated("banach-avoid direction axis out of range");

            const FormalBall& own = ctx.history[ctx.history.size() - 2].ball;
            const FormalBall& deletion = ctx.history.back().ball;
            const auto& center = detail::as_euclidean(ctx.space, own.center);
            const Rational radius = beta * own.radius;
            const Rational reach = (1 - beta) * own.radius;

            std::vector<Rational> v(ctx.space.dim, Rational(0));
            v[axis] = 1;

            std::size_t prior_bob_balls = 0;
            for (std::size_t i = 0; i < ctx.history.size(); ++i)
                if (mover_of(i + 1) == PlayerRole::Bob && ctx.history[i].kind == Move::Kind::Ball)
                    ++prior_bob_balls;

            auto legal = [&](const EuclideanPoint& z) {
                if (max_norm_distance(z, center) > reach) return false;
                return distance(ctx.space, Point(z), deletion.center) >
                       deletion.radius + radius;
            };

            if (prior_bob_balls >= 2) { // phase two
                for (int sign : {+1, -1}) {
                    EuclideanPoint z = center;
                    z.coords[axis] += sign * reach;
                    if (legal(z)) return Move::play(FormalBall(Point(z), radius));
                }
                throw NoLegalCandidate("banach-avoid: both phase-two candidates blocked");
            }

            // Phase one: enumerate displacement candidates, largest first.
            std::vector<EuclideanPoint> candidates;
            for (int denom : {1, 2, 4, 8}) {
                for (int ax = 0; ax < ctx.space.dim; ++ax) {
                    for (int sign : {+1, -1}) {
                        EuclideanPoint z = center;
                        z.coords[ax] += sign * reach / denom;
                        candidates.push_back(std::move(z));
                    }
                }
            }
            candidates.push_back(center);
            if (ctx.space.dim >= 2) {
                // Prefer the legal center farthest from the line x0 + R*e_axis.
                std::stable_sort(candidates.begin(), candidates.end(),
                                 [&](const EuclideanPoint& a, const EuclideanPoint& b) {
                                     return detail::distance_to_axis_line(a, x0, axis) >
                                            detail::distance_to_axis_line(b, x0, axis);
                                 });
                for (const EuclideanPoint& z : candidates) {
                    if (!legal(z)) continue;
                    if (detail::distance_to_axis_line(z, x0, axis) > 0)
                        return Move::play(FormalBall(Point(z), radius));
                }
            } else {
                for (const EuclideanPoint& z : candidates) {
                    if (!legal(z)) continue;
                    const AttractorSpec spec(z, {v}, beta, radius);
                    for (unsigned depth = 4; depth <= 16; depth += 4) {
                        const DistanceBounds bounds = attractor_distance_bounds(spec, x0, depth);
                        if (bounds.lower > 0)
                            return Move::play(FormalBall(Point(z), radius));
                        if (bounds.upper == 0) break; // x0 is an attractor point of z
                    }
                }
            }
            throw NoLegalCandidate("banach-avoid: no certified phase-one center");
        }};
}

// Re-centers as close to t as legality allows (exact lexicographically
// smallest max-norm projection onto the feasible center box), minimal radius.
inline Strategy target_chaser(Point t, PlayerRole role) {
    return Strategy{
        "chaser(t=" + format_point(t) + ")", role, [t, role](const GameContext& ctx) -> Move {
            detail::require_variant(ctx, true, true, false, "chaser");
            if (ctx.space.kind != SpaceKind::RealMax)
                throw PreconditionViolated("chaser needs a RealMax space");
            if (!ball_contains_point(ctx.space, ctx.history.front().ball, t))
                throw TargetOutside("chaser target outside the opening ball");
            const FormalBall& prev = ctx.history.back().ball;
            const Rational gamma = detail::role_factor(ctx.variant, role);
            const Rational slack = (1 - gamma) * prev.radius;
            const auto& x = detail::as_euclidean(ctx.space, prev.center);
            const auto& goal = detail::as_euclidean(ctx.space, t);
            // Max-norm distance from t to the box [x - slack, x + slack]^d.
            Rational delta = 0;
            for (int i = 0; i < ctx.space.dim; ++i) {
                const Rational lo = x.coords[i] - slack, hi = x.coords[i] + slack;
                if (goal.coords[i] < lo) delta = rational_max(delta, lo - goal.coords[i]);
                if (goal.coords[i] > hi) delta = rational_max(delta, goal.coords[i] - hi);
            }
            EuclideanPoint z = x;
            for (int i = 0; i < ctx.space.dim; ++i)
                z.coords[i] =
                    rational_max(x.coords[i] - slack, goal.coords[i] - delta);
            return Move::play(FormalBall(Point(z), gamma * prev.radius));
        }};
}

// Strong(1/2,1/2) on BinarySeq: copy the radius unless a threshold 4^-k can
// be crossed (rho/2 < 4^-k <= rho). A crossing freezes digit k to the shared
// value, and the mover rewrites every later digit toward `desired` (cost at
// most 4^-(k+1), always affordable inside the crossing window).
inline Strategy threshold_control(PlayerRole role, char desired) {
    if (desired != '0' && desired != '1')
        throw PreconditionViolated("desired tail digit must be 0 or 1");
    return Strategy{
        std::string("threshold-control(digit=") + desired + ")", role,
        [desired](const GameContext& ctx) -> Move {
            detail::require_variant(ctx, false, true, false, "threshold-control");
            if (ctx.space.kind != SpaceKind::BinarySeq ||
                ctx.variant.alpha != Rational(1, 2) || ctx.variant.beta != Rational(1, 2))
                throw PreconditionViolated(
                    "threshold-control needs Strong(1/2,1/2) on BinarySeq");
            const FormalBall& prev = ctx.history.back().ball;
            const Rational& rho = prev.radius;
            // The unique crossable threshold, if any: 4^-k in (rho/2, rho].
            unsigned k = 0;
            Rational power = 1;
            while (power > rho) {
                power /= 4;
                ++k;
            }
            if (2 * power <= rho) // not crossable; copy
                return Move::play(prev);
            const auto& x = detail::as_binseq(prev.center);
            std::string prefix;
            for (unsigned i = 0; i <= k; ++i) prefix.push_back(x.digit(i));
            const Point z = binseq(std::move(prefix), desired);
            const Rational d = distance(ctx.space, prev.center, z);
            const Rational cap = Rational(15, 16) * power;
            const Rational radius = rational_max(rho / 2, rational_min(rho - d, cap));
            return Move::play(FormalBall(z, radius));
        }};
}

// Deterministic pseudo-random legal opponent: the move is a pure function of
// (seed, history), so transcripts stay reproducible.
inline Strategy random_legal(PlayerRole role, std::uint64_t seed) {
    return Strategy{
        "random(seed=" + std::to_string(seed) + ")", role,
        [role, seed](const GameContext& ctx) -> Move {
            std::uint64_t mix = seed * 0x9e3779b97f4a7c15ull + ctx.history.size();
            mix ^= static_cast<std::uint64_t>(
                (numerator(ctx.history.back().ball.radius) % 1000003).convert_to<long long>());
            std::mt19937_64 rng(mix);
            auto draw = [&rng](int n) { return static_cast<int>(rng() % n); };

            const FormalBall& prev = ctx.history.back().ball;
            if (ctx.variant.kind != GameVariant::Kind::Absolute) {
                const Rational gamma = detail::role_factor(ctx.variant, role);
                const Rational slack = (1 - gamma) * prev.radius;
                Point z = prev.center;
                if (ctx.space.kind == SpaceKind::RealMax) {
                    EuclideanPoint e = detail::as_euclidean(ctx.space, prev.center);
                    const int axis = draw(ctx.space.dim);
                    e.coords[axis] += Rational(draw(17) - 8, 8) * slack;
                    z = e;
                }
                Rational radius = gamma * prev.radius;
                if (ctx.variant.kind == GameVariant::Kind::Strong) {
                    const Rational d = distance(ctx.space, z, prev.center);
                    radius += Rational(draw(4), 4) * (prev.radius - d - radius);
                }
                return Move::play(FormalBall(z, radius));
            }
            if (role == PlayerRole::Alice) {
                const Rational radius =
                    ctx.variant.beta * prev.radius * Rational(draw(4) + 1, 4);
                Point where = prev.center;
                if (ctx.space.kind == SpaceKind::RealMax && draw(3) != 0) {
                    EuclideanPoint e = detail::as_euclidean(ctx.space, prev.center);
                    const int axis = draw(ctx.space.dim);
                    e.coords[axis] += Rational(draw(17) - 8, 8) * prev.radius;
                    where = e;
                }
                return Move::erase(FormalBall(std::move(where), radius));
            }
            // Absolute Bob: rejection-sample centers and radii up to the exact
            // legal caps, fall back to the deterministic minimal reply.
            const FormalBall& own = ctx.history[ctx.history.size() - 2].ball;
            const FormalBall& deletion = prev;
            const Rational radius_min = ctx.variant.beta * own.radius;
            if (ctx.space.kind == SpaceKind::RealMax) {
                for (int attempt = 0; attempt < 20; ++attempt) {
                    EuclideanPoint e = detail::as_euclidean(ctx.space, own.center);
                    const int axis = draw(ctx.space.dim);
                    e.coords[axis] += Rational(draw(17) - 8, 8) * (own.radius - radius_min);
                    const Rational d_own = distance(ctx.space, Point(e), own.center);
                    const Rational d_del = distance(ctx.space, Point(e), deletion.center);
                    if (d_del <= deletion.radius + radius_min) continue;
                    const Rational cap =
                        rational_min(own.radius - d_own,
                                     Rational(15, 16) * (d_del - deletion.radius));
                    if (cap < radius_min) continue;
                    const Rational radius =
                        radius_min + Rational(draw(4), 4) * (cap - radius_min);
                    const Move candidate = Move::play(FormalBall(Point(e), radius));
                    if (validate_move(ctx.variant, ctx.space, ctx.history, candidate).ok)
                        return candidate;
                }
            }
            return detail::absolute_bob_min_move(ctx);
        }};
}

} // namespace schmidt
