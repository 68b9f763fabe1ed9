#pragma once

// Rulesets, legality checking, game execution and finite-horizon outcome
// reports for the three variants:
//
//   Schmidt(alpha, beta):  rho_n' = alpha*rho_n, rho_{n+1} = beta*rho_n',
//                          every move formally nested (<=_s) in the previous.
//   Strong(alpha, beta):   same with >= in place of =.
//   Absolute(beta):        Alice deletes a ball of radius <= beta*rho_n
//                          (center unconstrained); Bob replies inside his own
//                          previous ball with radius >= beta*rho_n, strictly
//                          disjoint from the deletion.
//
// Moves are 1-indexed; odd moves belong to Bob (move 1 is the initial ball),
// even moves to Alice. A horizon counts the moves made after the initial ball.

#include <schmidt/errors.hpp>
#include <schmidt/space.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace schmidt {

enum class PlayerRole { Alice, Bob };

inline const char* role_name(PlayerRole r) { return r == PlayerRole::Alice ? "alice" : "bob"; }

inline PlayerRole mover_of(std::size_t index_1based) {
    return index_1based % 2 == 1 ? PlayerRole::Bob : PlayerRole::Alice;
}

struct GameVariant {
    enum class Kind { Schmidt, Strong, Absolute };
    Kind kind = Kind::Schmidt;
    Rational alpha; // Alice's radius factor; unused for Absolute
    Rational beta;  // Bob's radius factor / deletion bound

    static GameVariant schmidt(Rational a, Rational b) {
        return make(Kind::Schmidt, std::move(a), std::move(b));
    }
    static GameVariant strong(Rational a, Rational b) {
        return make(Kind::Strong, std::move(a), std::move(b));
    }
    static GameVariant absolute(Rational b) { return make(Kind::Absolute, 1, std::move(b)); }

    std::string name() const {
        switch (kind) {
        case Kind::Schmidt: return "schmidt";
        case Kind::Strong: return "strong";
        case Kind::Absolute: return "absolute";
        }
        return {};
    }

private:
    static GameVariant make(Kind k, Rational a, Rational b) {
        if (k != Kind::Absolute && (a <= 0 || a >= 1))
            throw PreconditionViolated("alpha must lie in (0,1)");
        if (b <= 0 || b >= 1) throw PreconditionViolated("beta must lie in (0,1)");
        return GameVariant{k, std::move(a), std::move(b)};
    }
};

// Absolute playability: beta < c/5 on a c-uniformly perfect space; on the
// normed space the bound relaxes to beta < 1/3.
inline bool absolute_playable(const GameVariant& v, const Space& space) {
    if (v.kind != GameVariant::Kind::Absolute) return true;
    if (v.beta < space.perfectness / 5) return true;
    return space.kind == SpaceKind::RealMax && v.beta < Rational(1, 3);
}

struct Move {
    enum class Kind { Ball, Delete };
    Kind kind = Kind::Ball;
    FormalBall ball;

    static Move play(FormalBall b) { return Move{Kind::Ball, std::move(b)}; }
    static Move erase(FormalBall b) { return Move{Kind::Delete, std::move(b)}; }
    bool operator==(const Move&) const = default;
};

// One instantiated inequality from a ruleset, kept as exact rationals.
struct CertLine {
    std::string label;
    Rational lhs;
    std::string rel; // "==", "<=", ">=", "<", ">"
    Rational rhs;
    bool holds = false;

    std::string render() const {
        return label + ": " + format_rational(lhs) + " " + rel + " " + format_rational(rhs);
    }
};

struct LegalityCertificate {
    bool ok = true;
    std::string reason; // first failing rule, empty when ok
    std::vector<CertLine> lines;

    void require(std::string label, Rational lhs, std::string rel, Rational rhs) {
        bool holds = false;
        if (rel == "==") holds = lhs == rhs;
        else if (rel == "<=") holds = lhs <= rhs;
        else if (rel == ">=") holds = lhs >= rhs;
        else if (rel == "<") holds = lhs < rhs;
        else holds = lhs > rhs;
        lines.push_back(CertLine{label, std::move(lhs), std::move(rel), std::move(rhs), holds});
        if (!holds && ok) {
            ok = false;
            reason = lines.back().render();
        }
    }
    void fail(std::string why) {
        ok = false;
        if (reason.empty()) reason = std::move(why);
    }
};

struct IllegalMove : Error {
    LegalityCertificate certificate;
    IllegalMove(std::string what, LegalityCertificate cert)
        : Error(std::move(what)), certificate(std::move(cert)) {}
};

struct StrategyIllegalMove : IllegalMove {
    using IllegalMove::IllegalMove;
};

using History = std::span<const Move>;

// Bob's latest ball in `history` (deletions are skipped).
inline const FormalBall& last_bob_ball(History history) {
    for (std::size_t i = history.size(); i-- > 0;)
        if (mover_of(i + 1) == PlayerRole::Bob && history[i].kind == Move::Kind::Ball)
            return history[i].ball;
    throw Error("history holds no Bob ball");
}

// Exact legality of `move` as move number history.size()+1. The certificate
// carries every instantiated inequality whether or not it holds.
inline LegalityCertificate validate_move(const GameVariant& variant, const Space& space,
                                         History history, const Move& move) {
    LegalityCertificate cert;
    const std::size_t n = history.size() + 1;
    const PlayerRole mover = mover_of(n);

    if (n == 1) { // Bob's free opening ball
        if (move.kind != Move::Kind::Ball) cert.fail("opening move must be a ball");
        return cert;
    }

    const bool absolute = variant.kind == GameVariant::Kind::Absolute;
    const bool expect_delete = absolute && mover == PlayerRole::Alice;
    if (expect_delete && move.kind != Move::Kind::Delete) {
        cert.fail("alice must delete in the absolute game");
        return cert;
    }
    if (!expect_delete && move.kind != Move::Kind::Ball) {
        cert.fail(std::string(role_name(mover)) + " must play a ball");
        return cert;
    }

    const FormalBall& prev = history.back().ball;
    switch (variant.kind) {
    case GameVariant::Kind::Schmidt:
    case GameVariant::Kind::Strong: {
        const Rational& factor = mover == PlayerRole::Alice ? variant.alpha : variant.beta;
        const char* rel = variant.kind == GameVariant::Kind::Schmidt ? "==" : ">=";
        cert.require("radius law", move.ball.radius, rel, factor * prev.radius);
        cert.require("formal inclusion",
                     move.ball.radius + distance(space, move.ball.center, prev.center), "<=",
                     prev.radius);
        break;
    }
    case GameVariant::Kind::Absolute: {
        if (mover == PlayerRole::Alice) {
            cert.require("deletion radius", move.ball.radius, "<=", variant.beta * prev.radius);
        } else {
            const FormalBall& own = history[history.size() - 2].ball; // Bob's previous ball
            cert.require("radius lower bound", move.ball.radius, ">=",
                         variant.beta * own.radius);
            cert.require("formal inclusion",
                         move.ball.radius + distance(space, move.ball.center, own.center), "<=",
                         own.radius);
            cert.require("disjoint from deletion",
                         distance(space, move.ball.center, prev.center), ">",
                         move.ball.radius + prev.radius);
        }
        break;
    }
    }
    return cert;
}

struct Transcript {
    GameVariant variant;
    Space space;
    std::vector<Move> moves; // moves[0] is the initial ball (move 1)
    std::vector<LegalityCertificate> certificates;
    int horizon_requested = 0;
    std::string aborted_by; // strategy name when a strategy gave up early

    Transcript() = default;
    Transcript(GameVariant v, Space s) : variant(std::move(v)), space(std::move(s)) {}

    History history() const { return History(moves); }
    std::size_t plies() const { return moves.empty() ? 0 : moves.size() - 1; }

    const FormalBall& last_ball() const {
        for (auto it = moves.rbegin(); it != moves.rend(); ++it)
            if (it->kind == Move::Kind::Ball) return it->ball;
        throw Error("empty transcript");
    }

    // I(omega): the intersection of the nested balls is contained in the last
    // Bob ball (absolute game) or simply the last ball played (Schmidt/strong,
    // where every move nests).
    const FormalBall& enclosure() const {
        if (variant.kind == GameVariant::Kind::Absolute) return last_bob_ball(history());
        return last_ball();
    }

    void append(Move move, LegalityCertificate cert) {
        moves.push_back(std::move(move));
        certificates.push_back(std::move(cert));
    }
};

struct GameContext {
    const GameVariant& variant;
    const Space& space;
    History history;
};

struct Strategy {
    std::string name;
    PlayerRole role = PlayerRole::Alice;
    std::function<Move(const GameContext&)> next;
};

// Deterministic play. Each strategy move is validated; an illegal return
// throws StrategyIllegalMove carrying the certificate, a StrategyAbort ends
// the transcript early with the culprit recorded.
inline Transcript run_game(const GameVariant& variant, const Space& space,
                           const Strategy& alice, const Strategy& bob,
                           const FormalBall& initial, int horizon) {
    if (horizon < 0) throw PreconditionViolated("horizon must be >= 0");
    if (alice.role != PlayerRole::Alice || bob.role != PlayerRole::Bob)
        throw PreconditionViolated("strategy roles do not match seats");
    if (!absolute_playable(variant, space))
        throw NotPlayable("absolute game with beta = " + format_rational(variant.beta) +
                          " is not playable on this space");
    Transcript t{variant, space};
    t.horizon_requested = horizon;
    Move opening = Move::play(initial);
    t.append(opening, validate_move(variant, space, {}, opening));
    for (int ply = 0; ply < horizon; ++ply) {
        const std::size_t n = t.moves.size() + 1;
        const Strategy& mover = mover_of(n) == PlayerRole::Alice ? alice : bob;
        Move move = Move::play(initial); // placeholder, overwritten below
        try {
            move = mover.next(GameContext{variant, space, t.history()});
        } catch (const StrategyAbort&) {
            t.aborted_by = mover.name;
            break;
        }
        LegalityCertificate cert = validate_move(variant, space, t.history(), move);
        if (!cert.ok)
            throw StrategyIllegalMove("strategy '" + mover.name + "' made an illegal move " +
                                          std::to_string(n) + ": " + cert.reason,
                                      std::move(cert));
        t.append(std::move(move), std::move(cert));
    }
    return t;
}

// --- Target sets -------------------------------------------------------------

enum class BallDecision { NonEmpty, Empty, Unknown };

struct TargetSet {
    std::string name;
    bool dense = false;
    std::function<bool(const Space&, const Point&)> contains;
    std::function<BallDecision(const Space&, const FormalBall&)> decide_ball;
};

// S = X. Dense; every ball meets it.
inline TargetSet target_everything() {
    return TargetSet{"all", true,
                     [](const Space&, const Point&) { return true; },
                     [](const Space&, const FormalBall&) { return BallDecision::NonEmpty; }};
}

inline TargetSet target_point(Point p) {
    return TargetSet{
        "point(" + format_point(p) + ")", false,
        [p](const Space&, const Point& q) { return q == p; },
        [p](const Space& s, const FormalBall& b) {
            return ball_contains_point(s, b, p) ? BallDecision::NonEmpty : BallDecision::Empty;
        }};
}

// S = X \ {y}: dense, and every (positive-radius) ball meets it.
inline TargetSet target_complement_point(Point y) {
    return TargetSet{"complement-point(" + format_point(y) + ")", true,
                     [y](const Space&, const Point& q) { return !(q == y); },
                     [](const Space&, const FormalBall&) { return BallDecision::NonEmpty; }};
}

// S = X \ B0. A ball inside B0 misses S; a ball not contained in B0 meets it.
inline TargetSet target_complement_ball(FormalBall b0) {
    return TargetSet{
        "complement-ball(" + format_ball(b0) + ")", false,
        [b0](const Space& s, const Point& q) { return !ball_contains_point(s, b0, q); },
        [b0](const Space& s, const FormalBall& b) {
            return ball_subset(s, b, b0) ? BallDecision::Empty : BallDecision::NonEmpty;
        }};
}

// Finite union of closed rational intervals on RealMax(1).
struct IntervalUnion {
    std::vector<std::pair<Rational, Rational>> intervals;

    bool contains(const Rational& x) const {
        for (const auto& [lo, hi] : intervals)
            if (lo <= x && x <= hi) return true;
        return false;
    }
    bool meets(const Rational& lo, const Rational& hi) const {
        for (const auto& [a, b] : intervals)
            if (a <= hi && lo <= b) return true;
        return false;
    }
    // Closed cover test: does the union contain [lo, hi] entirely?
    bool covers(const Rational& lo, const Rational& hi) const {
        auto sorted = intervals;
        std::sort(sorted.begin(), sorted.end());
        Rational reached = lo;
        bool started = false;
        for (const auto& [a, b] : sorted) {
            if (!started) {
                if (a <= lo && lo <= b) {
                    started = true;
                    reached = b;
                }
                continue;
            }
            if (a > reached) break; // gap (closed intervals: abutting is fine)
            reached = rational_max(reached, b);
        }
        return started && reached >= hi;
    }
};

inline TargetSet target_intervals(IntervalUnion u) {
    std::string label = "intervals(";
    for (std::size_t i = 0; i < u.intervals.size(); ++i) {
        if (i) label += ";";
        label += format_rational(u.intervals[i].first) + ".." +
                 format_rational(u.intervals[i].second);
    }
    label += ")";
    return TargetSet{
        label, false,
        [u](const Space& s, const Point& q) {
            return u.contains(detail::as_euclidean(s, q).coords[0]);
        },
        [u](const Space& s, const FormalBall& b) {
            const Rational x = detail::as_euclidean(s, b.center).coords[0];
            return u.meets(x - b.radius, x + b.radius) ? BallDecision::NonEmpty
                                                       : BallDecision::Empty;
        }};
}

// --- Finite-horizon outcome --------------------------------------------------

enum class Winner { Alice, Bob, UndecidedAtHorizon };

inline const char* winner_name(Winner w) {
    switch (w) {
    case Winner::Alice: return "alice";
    case Winner::Bob: return "bob";
    case Winner::UndecidedAtHorizon: return "undecided-at-horizon";
    }
    return {};
}

struct Outcome {
    FormalBall enclosure;
    Rational limit_radius_upper; // exact limit 0 for Schmidt, else last radius
    bool limit_known_zero = false;
    Winner winner = Winner::UndecidedAtHorizon;
};

// Three-valued finite-horizon verdict. Bob wins on a certified empty
// intersection; Alice on a shrinking game whose enclosure center lies in the
// target, or on a declared-dense target while the radius bound stays positive.
inline Outcome outcome(const Transcript& t, const TargetSet& target) {
    const FormalBall& enc = t.enclosure();
    const bool known_zero = t.variant.kind == GameVariant::Kind::Schmidt;
    Rational limit_upper = known_zero ? Rational(0) : enc.radius;

    Winner w = Winner::UndecidedAtHorizon;
    const BallDecision dec =
        target.decide_ball ? target.decide_ball(t.space, enc) : BallDecision::Unknown;
    if (dec == BallDecision::Empty) w = Winner::Bob;
    else if (known_zero && target.contains && target.contains(t.space, enc.center))
        w = Winner::Alice;
    else if (target.dense && limit_upper > 0) w = Winner::Alice;
    return Outcome{enc, std::move(limit_upper), known_zero, w};
}

// --- sigma-compatible enumeration --------------------------------------------

// A finite menu of opponent moves for a given position.
using MoveMenu = std::function<std::vector<Move>(const GameContext&)>;

// Declared finite submenu of the (infinite) ruleset: centers on a rational
// grid around the current center, radii on the minimal legal schedule.
// Offsets run over {-span..span} * step * rho per axis; illegal candidates
// are dropped by the enumerator.
inline MoveMenu center_grid_menu(Rational step, int span) {
    return [step = std::move(step), span](const GameContext& ctx) {
        const std::size_t n = ctx.history.size() + 1;
        const PlayerRole mover = mover_of(n);
        const bool absolute = ctx.variant.kind == GameVariant::Kind::Absolute;
        const FormalBall& base = absolute && mover == PlayerRole::Bob
                                     ? ctx.history[ctx.history.size() - 2].ball
                                     : ctx.history.back().ball;
        const Rational factor =
            mover == PlayerRole::Alice ? (absolute ? ctx.variant.beta : ctx.variant.alpha)
                                       : ctx.variant.beta;
        const Rational radius = factor * base.radius;
        std::vector<Move> out;
        if (!std::holds_alternative<EuclideanPoint>(base.center)) {
            Move move{absolute && mover == PlayerRole::Alice ? Move::Kind::Delete
                                                             : Move::Kind::Ball,
                      FormalBall(base.center, radius)};
            out.push_back(std::move(move));
            return out;
        }
        const auto& center = std::get<EuclideanPoint>(base.center);
        for (int axis = 0; axis < static_cast<int>(center.coords.size()); ++axis) {
            for (int i = -span; i <= span; ++i) {
                if (axis > 0 && i == 0) continue; // the unshifted center once
                EuclideanPoint z = center;
                z.coords[axis] += i * step * base.radius;
                Move move{absolute && mover == PlayerRole::Alice ? Move::Kind::Delete
                                                                 : Move::Kind::Ball,
                          FormalBall(Point(z), radius)};
                out.push_back(std::move(move));
            }
        }
        return out;
    };
}

// Legal extensions of `prefix` by exactly `plies` moves: the strategy's turns
// are deterministic, opponent turns branch over the menu's legal entries.
inline std::vector<Transcript> compatible_plays(const Strategy& strategy,
                                                const Transcript& prefix, const MoveMenu& menu,
                                                int plies) {
    std::vector<Transcript> out;
    std::vector<Transcript> frontier{prefix};
    for (int ply = 0; ply < plies; ++ply) {
        std::vector<Transcript> next;
        for (const Transcript& t : frontier) {
            const std::size_t n = t.moves.size() + 1;
            const GameContext ctx{t.variant, t.space, t.history()};
            if (mover_of(n) == strategy.role) {
                Move move = strategy.next(ctx);
                LegalityCertificate cert = validate_move(t.variant, t.space, t.history(), move);
                if (!cert.ok)
                    throw StrategyIllegalMove("strategy '" + strategy.name +
                                                  "' made an illegal move: " + cert.reason,
                                              std::move(cert));
                Transcript copy = t;
                copy.append(std::move(move), std::move(cert));
                next.push_back(std::move(copy));
            } else {
                for (Move move : menu(ctx)) {
                    LegalityCertificate cert =
                        validate_move(t.variant, t.space, t.history(), move);
                    if (!cert.ok) continue;
                    Transcript copy = t;
                    copy.append(std::move(move), std::move(cert));
                    next.push_back(std::move(copy));
                }
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

} // namespace schmidt
