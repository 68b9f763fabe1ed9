#pragma once

// Invariant batteries behind the `verify` CLI subcommand: each suite runs the
// module's properties over deterministic pseudo-random inputs and reports one
// line per property with case counts.

#include <schmidt/geometry.hpp>
#include <schmidt/lab.hpp>
#include <schmidt/perfect_tree.hpp>
#include <schmidt/scenario.hpp>
#include <schmidt/strategies.hpp>

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace schmidt {

struct PropertyResult {
    std::string name;
    bool passed = true;
    long cases = 0;
    std::string detail;

    PropertyResult() = default;
    explicit PropertyResult(std::string n) : name(std::move(n)) {}
    PropertyResult(std::string n, bool p, long c, std::string d)
        : name(std::move(n)), passed(p), cases(c), detail(std::move(d)) {}
};

namespace verify_detail {

struct Gen {
    std::mt19937_64 engine;
    explicit Gen(std::uint64_t seed) : engine(seed) {}
    int below(int n) { return static_cast<int>(engine() % static_cast<unsigned>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool flip() { return below(2) == 1; }

    Point point(const Space& space) {
        switch (space.kind) {
        case SpaceKind::RealMax: {
            std::vector<Rational> coords;
            for (int i = 0; i < space.dim; ++i)
                coords.push_back(Rational(range(-32, 32), 1 << below(5)));
            return EuclideanPoint(std::move(coords));
        }
        case SpaceKind::CantorTernary: {
            std::string digits;
            for (int i = below(9); i-- > 0;) digits.push_back(flip() ? '2' : '0');
            return CantorPoint(std::move(digits));
        }
        case SpaceKind::BinarySeq: {
            std::string prefix;
            for (int i = below(9); i-- > 0;) prefix.push_back(flip() ? '1' : '0');
            return BinarySeqPoint(std::move(prefix), flip() ? '1' : '0');
        }
        }
        throw Error("unreachable");
    }

    FormalBall ball(const Space& space) {
        const int den = 1 << below(7);
        return FormalBall(point(space), Rational(range(1, 2 * den), den));
    }

    FormalBall nested(const Space& space, const FormalBall& outer) {
        const Rational f(range(1, 3), 4);
        const Rational radius = f * outer.radius;
        Point center = outer.center;
        if (space.kind == SpaceKind::RealMax) {
            EuclideanPoint e = std::get<EuclideanPoint>(outer.center);
            e.coords[below(space.dim)] += Rational(range(-8, 8), 8) * (outer.radius - radius);
            center = e;
        }
        return FormalBall(std::move(center), radius);
    }
};

inline std::vector<Space> all_spaces() {
    return {Space::real_max(1), Space::real_max(2), Space::cantor_ternary(),
            Space::binary_seq()};
}

inline Point origin_of(const Space& space) {
    switch (space.kind) {
    case SpaceKind::RealMax:
        return EuclideanPoint(std::vector<Rational>(space.dim, Rational(0)));
    case SpaceKind::CantorTernary: return CantorPoint("");
    case SpaceKind::BinarySeq: return BinarySeqPoint("", '0');
    }
    throw Error("unreachable");
}

} // namespace verify_detail

inline std::vector<PropertyResult> verify_geometry(long count = 1000,
                                                   std::uint64_t seed = 1) {
    using verify_detail::Gen;
    std::vector<PropertyResult> out;
    auto run = [&](std::string name, auto&& body) {
        PropertyResult r;
        r.name = std::move(name);
        try {
            body(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    };

    run("formal-order-axioms", [&](PropertyResult& r) {
        for (const Space& space : verify_detail::all_spaces()) {
            Gen gen(seed);
            for (long i = 0; i < count; ++i, ++r.cases) {
                const FormalBall b1 = gen.ball(space);
                const FormalBall b2 = gen.nested(space, b1);
                const FormalBall b3 = gen.nested(space, b2);
                if (!formal_leq(space, b1, b1) || !formal_leq(space, b2, b1) ||
                    !formal_leq(space, b3, b1))
                    r.passed = false;
                if (formal_leq(space, b1, b2) && !(b1 == b2)) r.passed = false;
            }
        }
    });
    run("leq-implies-subset", [&](PropertyResult& r) {
        for (const Space& space : verify_detail::all_spaces()) {
            Gen gen(seed + 1);
            for (long i = 0; i < count; ++i, ++r.cases) {
                const FormalBall outer = gen.ball(space);
                const FormalBall inner =
                    gen.flip() ? gen.nested(space, outer) : gen.ball(space);
                const bool leq = formal_leq(space, inner, outer);
                const bool subset = ball_subset(space, inner, outer);
                if (leq && !subset) r.passed = false;
                if (space.kind == SpaceKind::RealMax && leq != subset) r.passed = false;
            }
        }
    });
    run("cantor-containment-strictly-weaker", [&](PropertyResult& r) {
        const Space cantor = Space::cantor_ternary();
        const FormalBall inner(CantorPoint(""), rat(1, 2));
        const FormalBall outer(CantorPoint(""), rat(1, 3));
        r.cases = 1;
        r.passed = ball_subset(cantor, inner, outer) && !formal_leq(cantor, inner, outer);
    });
    run("triangle-inequality", [&](PropertyResult& r) {
        for (const Space& space : verify_detail::all_spaces()) {
            Gen gen(seed + 2);
            for (long i = 0; i < count; ++i, ++r.cases) {
                const Point a = gen.point(space), b = gen.point(space), c = gen.point(space);
                if (distance(space, a, c) > distance(space, a, b) + distance(space, b, c))
                    r.passed = false;
            }
        }
    });
    run("perfectness-witness-shell", [&](PropertyResult& r) {
        for (const Space& space : verify_detail::all_spaces()) {
            Gen gen(seed + 3);
            for (long i = 0; i < count / 4; ++i, ++r.cases) {
                const Point x = gen.point(space);
                const Rational rho(gen.range(1, 64), 64);
                const Point p = uniform_perfect_witness(space, x, rho, space.perfectness);
                const Rational d = distance(space, x, p);
                if (!(d > space.perfectness * rho && d <= rho)) r.passed = false;
            }
        }
    });
    run("disjoint-picker-postconditions", [&](PropertyResult& r) {
        for (const Space& space : verify_detail::all_spaces()) {
            Gen gen(seed + 4);
            for (long i = 0; i < count / 4; ++i, ++r.cases) {
                const FormalBall outer = gen.ball(space);
                const Rational c = space.perfectness;
                const FormalBall deleted(
                    gen.flip() ? outer.center : gen.point(space),
                    c / 5 * outer.radius * Rational(gen.range(1, 8), 8));
                const FormalBall picked = disjoint_ball_picker(space, outer, deleted, c);
                if (picked.radius != c / 5 * outer.radius) r.passed = false;
                if (!formal_leq(space, picked, outer)) r.passed = false;
                if (!(distance(space, picked.center, deleted.center) >
                      deleted.radius + picked.radius))
                    r.passed = false;
            }
        }
    });
    return out;
}

inline std::vector<PropertyResult> verify_engine(long count = 200, std::uint64_t seed = 2) {
    std::vector<PropertyResult> out;
    PropertyResult schedule{"schmidt-radius-law"};
    PropertyResult cauchy{"cauchy-estimate"};
    PropertyResult nested{"nested-balls"};
    PropertyResult determinism{"deterministic-replay"};
    for (const Space& space : verify_detail::all_spaces()) {
        for (long g = 0; g < count / 4; ++g) {
            const GameVariant v = g % 2 ? GameVariant::schmidt(rat(1, 3), rat(1, 4))
                                        : GameVariant::strong(rat(1, 2), rat(1, 3));
            const FormalBall initial(verify_detail::origin_of(space), rat(1));
            const Transcript t =
                run_game(v, space, random_legal(PlayerRole::Alice, seed + g),
                         random_legal(PlayerRole::Bob, seed + g + 1000), initial, 10);
            for (std::size_t i = 1; i < t.moves.size(); ++i, ++nested.cases) {
                if (!ball_subset(space, t.moves[i].ball, t.moves[i - 1].ball))
                    nested.passed = false;
                if (v.kind == GameVariant::Kind::Schmidt) {
                    const Rational factor =
                        mover_of(i + 1) == PlayerRole::Alice ? v.alpha : v.beta;
                    ++schedule.cases;
                    if (t.moves[i].ball.radius != factor * t.moves[i - 1].ball.radius)
                        schedule.passed = false;
                }
            }
            for (std::size_t n = 0; n < t.moves.size(); n += 2)
                for (std::size_t m = n; m < t.moves.size(); m += 2, ++cauchy.cases)
                    if (distance(space, t.moves[m].ball.center, t.moves[n].ball.center) >
                        t.moves[n].ball.radius - t.moves[m].ball.radius)
                        cauchy.passed = false;
            const Transcript replay =
                run_game(v, space, random_legal(PlayerRole::Alice, seed + g),
                         random_legal(PlayerRole::Bob, seed + g + 1000), initial, 10);
            ++determinism.cases;
            if (transcript_to_jsonl(t) != transcript_to_jsonl(replay))
                determinism.passed = false;
        }
    }
    out.push_back(std::move(schedule));
    out.push_back(std::move(cauchy));
    out.push_back(std::move(nested));
    out.push_back(std::move(determinism));
    return out;
}

inline std::vector<PropertyResult> verify_strategies(long count = 100,
                                                     std::uint64_t seed = 3) {
    const Space real1 = Space::real_max(1);
    std::vector<PropertyResult> out;
    PropertyResult legality{"strategy-legality-sweep"};
    PropertyResult avoidance{"avoid-point-margins"};
    PropertyResult decay{"center-delete-decay"};
    PropertyResult gap{"candidate-gap-identity"};
    PropertyResult control{"threshold-turn-ownership"};
    try {
        for (long g = 0; g < count; ++g) {
            const FormalBall unit(euclidean1(rat(0)), rat(1));
            const GameVariant sv = GameVariant::schmidt(rat(1, 5), rat(1, 5));
            const Point y = euclidean1(Rational(static_cast<int>(g % 16), 16));
            const Transcript avoid =
                run_game(sv, real1, schmidt_avoid_point(y, rat(1, 2), PlayerRole::Alice),
                         random_legal(PlayerRole::Bob, seed + g), unit, 10);
            ++legality.cases;
            for (std::size_t i = 1; i < avoid.moves.size(); i += 2, ++avoidance.cases)
                if (!(distance(real1, avoid.moves[i].ball.center, y) >
                      avoid.moves[i].ball.radius))
                    avoidance.passed = false;

            const GameVariant av = GameVariant::absolute(rat(1, 10));
            const Transcript deleted =
                run_game(av, real1, absolute_center_delete(),
                         random_legal(PlayerRole::Bob, seed + g), unit, 10);
            ++legality.cases;
            for (std::size_t i = 2; i < deleted.moves.size(); i += 2, ++decay.cases)
                if (!(2 * deleted.moves[i].ball.radius < deleted.moves[i - 2].ball.radius))
                    decay.passed = false;

            const GameVariant bv = GameVariant::absolute(rat(1, 4));
            const Transcript banach = run_game(
                bv, real1, random_legal(PlayerRole::Alice, seed + g),
                banach_bob_avoid(std::get<EuclideanPoint>(euclidean1(rat(0))), 0), unit, 10);
            ++legality.cases;

            verify_detail::Gen gen(seed + g);
            const Rational beta(gen.range(1, 21), 64);
            const Rational rho(gen.range(1, 64), 16);
            ++gap.cases;
            if (2 * (1 - beta) * rho - 2 * beta * rho != 2 * (1 - 2 * beta) * rho ||
                !(2 * (1 - 2 * beta) * rho > 2 * beta * rho))
                gap.passed = false;

            const GameVariant tv = GameVariant::strong(rat(1, 2), rat(1, 2));
            const Transcript ctrl = run_game(
                tv, Space::binary_seq(), threshold_control(PlayerRole::Alice, '1'),
                g % 2 ? copy_radius(PlayerRole::Bob) : random_legal(PlayerRole::Bob, seed + g),
                FormalBall(binseq("", '0'), rat(1)), 16);
            ++legality.cases;
            bool opportunity = false;
            for (std::size_t i = 1; i < ctrl.moves.size(); ++i, ++control.cases) {
                const Rational& before = ctrl.moves[i - 1].ball.radius;
                const Rational& after = ctrl.moves[i].ball.radius;
                Rational power = 1;
                while (power > before) power /= 4;
                const bool alice_turn = mover_of(i + 1) == PlayerRole::Alice;
                if (alice_turn && 2 * power > before) opportunity = true;
                if (after < power && power <= before && opportunity && !alice_turn)
                    control.passed = false;
            }
        }
    } catch (const std::exception& e) {
        legality.passed = false;
        legality.detail = e.what();
    }
    out.push_back(std::move(legality));
    out.push_back(std::move(avoidance));
    out.push_back(std::move(decay));
    out.push_back(std::move(gap));
    out.push_back(std::move(control));
    return out;
}

inline std::vector<PropertyResult> verify_tree_suite(int depth = 4) {
    std::vector<PropertyResult> out;
    try {
        const GameVariant v = GameVariant::schmidt(rat(1, 5), rat(1, 5));
        const Space real1 = Space::real_max(1);
        const auto sigma = min_radius(v, PlayerRole::Alice);
        Transcript root{v, real1};
        const Move opening = Move::play(FormalBall(euclidean1(rat(0)), rat(1)));
        root.append(opening, validate_move(v, real1, {}, opening));
        const PerfectTree tree = build_perfect_tree(sigma, root, depth);
        const TreeReport report = verify_tree(tree, &sigma);
        for (const TreeCheck& check : report.checks)
            out.push_back(PropertyResult{"tree-" + check.name, check.passed,
                                         static_cast<long>(tree.nodes.size()), check.detail});
    } catch (const std::exception& e) {
        out.push_back(PropertyResult{"tree-build", false, 0, e.what()});
    }
    return out;
}

inline std::vector<PropertyResult> verify_lab(long count = 200, std::uint64_t seed = 5) {
    std::vector<PropertyResult> out;
    PropertyResult classify{"classifier-fixtures"};
    classify.cases = 3;
    classify.passed =
        classify_parameters(GameVariant::schmidt(rat(1, 5), rat(1, 5)), rat(1, 2), false)
                .kind == RegimeKind::UndeterminedBernstein_i &&
        classify_parameters(GameVariant::absolute(rat(1, 200)), rat(1, 2), false).kind ==
            RegimeKind::UndeterminedBernstein_iii &&
        classify_parameters(GameVariant::schmidt(rat(99, 100), rat(1, 2)), rat(1, 2), true)
                .kind == RegimeKind::DeterminedForAllS;
    out.push_back(std::move(classify));

    PropertyResult stable{"classifier-reverifies"};
    {
        verify_detail::Gen gen(seed);
        for (long i = 0; i < count; ++i, ++stable.cases) {
            const GameVariant v = GameVariant::schmidt(Rational(gen.range(1, 63), 64),
                                                       Rational(gen.range(1, 63), 64));
            if (!classify_parameters(v, Rational(gen.range(1, 9), 10), gen.flip()).reverify())
                stable.passed = false;
        }
    }
    out.push_back(std::move(stable));

    PropertyResult measure{"measure-bound-and-cover"};
    {
        measure.cases = 1;
        measure.passed = measure_upper_bound(rat(1, 4), rat(1), 3).bound == rat(1, 4);
        const MeasureCover cover = measure_upper_bound(rat(1, 3), rat(1), 3);
        for (const Rational& point : attractor_offsets_line(rat(1, 3), rat(1), 8)) {
            ++measure.cases;
            bool inside = false;
            for (const auto& [lo, hi] : cover.intervals)
                if (lo <= point && point <= hi) inside = true;
            if (!inside) measure.passed = false;
        }
    }
    out.push_back(std::move(measure));

    PropertyResult dim{"dimension-values"};
    dim.cases = 2;
    dim.passed = dimension_formula(rat(1, 4)) == 0.5 &&
                 std::abs(box_counting_estimate(rat(1, 3), 12) -
                          std::log(2.0) / std::log(3.0)) <= 0.05;
    out.push_back(std::move(dim));

    PropertyResult minimax{"minimax-bracket"};
    {
        verify_detail::Gen gen(seed + 1);
        for (long i = 0; i < count / 10; ++i, ++minimax.cases) {
            DiscreteGameSpec spec{GameVariant::schmidt(rat(1, 2), rat(1, 2)),
                                  Space::real_max(1),
                                  rat(1, 4),
                                  FormalBall(euclidean1(Rational(gen.range(-2, 2), 4)), rat(1)),
                                  IntervalUnion{{{Rational(gen.range(-8, 0), 8),
                                                  Rational(gen.range(0, 8), 8)}}},
                                  1 + gen.below(3)};
            const MinimaxValue value = truncated_minimax(spec);
            if (value.pessimistic && !value.optimistic) minimax.passed = false;
        }
    }
    out.push_back(std::move(minimax));
    return out;
}

inline std::vector<PropertyResult> verify_suite(const std::string& name, int tree_depth = 4) {
    if (name == "geometry") return verify_geometry();
    if (name == "engine") return verify_engine();
    if (name == "strategies") return verify_strategies();
    if (name == "tree") return verify_tree_suite(tree_depth);
    if (name == "lab") return verify_lab();
    throw Error("unknown verify suite '" + name + "'");
}

} // namespace schmidt
