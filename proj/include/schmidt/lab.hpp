#pragma once

// Parameter-regime classification, the attractor measure/dimension numbers,
// and a truncated minimax solver for center-grid subgames. The two dimension
// estimators are the only places floating point appears in the library.

#include <schmidt/attractor.hpp>
#include <schmidt/game.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace schmidt {

enum class RegimeKind {
    UndeterminedBernstein_i,
    UndeterminedBernstein_ii,
    UndeterminedBernstein_iii,
    UndeterminedBernstein_iv,
    DeterminedForAllS,
    Unclassified,
};

inline const char* regime_name(RegimeKind k) {
    switch (k) {
    case RegimeKind::UndeterminedBernstein_i: return "undetermined-on-bernstein(i)";
    case RegimeKind::UndeterminedBernstein_ii: return "undetermined-on-bernstein(ii)";
    case RegimeKind::UndeterminedBernstein_iii: return "undetermined-on-bernstein(iii)";
    case RegimeKind::UndeterminedBernstein_iv: return "undetermined-on-bernstein(iv)";
    case RegimeKind::DeterminedForAllS: return "determined-for-all-S";
    case RegimeKind::Unclassified: return "unclassified";
    }
    return {};
}

struct RegimeLabel {
    RegimeKind kind = RegimeKind::Unclassified;
    std::string clause;           // which hypothesis fired
    std::vector<CertLine> certificate; // the exact inequality instances

    bool reverify() const {
        for (const CertLine& line : certificate) {
            bool holds = false;
            if (line.rel == "==") holds = line.lhs == line.rhs;
            else if (line.rel == "<=") holds = line.lhs <= line.rhs;
            else if (line.rel == ">=") holds = line.lhs >= line.rhs;
            else if (line.rel == "<") holds = line.lhs < line.rhs;
            else holds = line.lhs > line.rhs;
            if (holds != line.holds) return false;
        }
        return true;
    }
};

// The strongest applicable label with its exact inequality certificate.
// Schmidt/strong: the small-parameter clause (i) needs only uniform
// perfectness, so it wins over the Banach clause (ii); on a Banach space the
// complementary inequality 1 + ab <= 2 max(a,b) gives determinacy for every
// target. Absolute: clause (iii) from the c-bound, clause (iv) on Banach
// spaces for beta < 1/3.
inline RegimeLabel classify_parameters(const GameVariant& variant, const Rational& c,
                                       bool banach) {
    const Rational& alpha = variant.alpha;
    const Rational& beta = variant.beta;
    RegimeLabel label;
    auto line = [](std::string text, Rational lhs, std::string rel, Rational rhs) {
        const bool holds = rel == "<"    ? lhs < rhs
                           : rel == "<=" ? lhs <= rhs
                           : rel == ">"  ? lhs > rhs
                                         : lhs >= rhs;
        return CertLine{std::move(text), std::move(lhs), std::move(rel), std::move(rhs), holds};
    };

    if (variant.kind != GameVariant::Kind::Absolute) {
        const Rational small = c / (1 + 2 * c);
        const Rational lhs_det = 1 + alpha * beta;
        const Rational rhs_det = 2 * rational_max(alpha, beta);
        if (banach && lhs_det <= rhs_det) {
            label.kind = RegimeKind::DeterminedForAllS;
            label.clause = "1 + alpha*beta <= 2*max(alpha,beta) on a Banach space";
            label.certificate.push_back(line("1 + alpha*beta", lhs_det, "<=", rhs_det));
            return label;
        }
        if (alpha < small && beta < small) {
            label.kind = RegimeKind::UndeterminedBernstein_i;
            label.clause = "alpha, beta < c/(1+2c)";
            label.certificate.push_back(line("alpha", alpha, "<", small));
            label.certificate.push_back(line("beta", beta, "<", small));
            return label;
        }
        if (banach) {
            label.kind = RegimeKind::UndeterminedBernstein_ii;
            label.clause = "1 + alpha*beta > 2*max(alpha,beta) on a Banach space";
            label.certificate.push_back(line("1 + alpha*beta", lhs_det, ">", rhs_det));
            return label;
        }
        label.clause = "no clause applies without the Banach hypothesis";
        return label;
    }

    // Absolute game: playability first.
    const bool playable = beta < c / 5 || (banach && beta < Rational(1, 3));
    if (!playable)
        throw NotPlayable("absolute game needs beta < c/5 (or beta < 1/3 on a Banach space)");
    const Rational square = c / 5 * (c / 5);
    if (beta < square) {
        label.kind = RegimeKind::UndeterminedBernstein_iii;
        label.clause = "beta < (c/5)^2";
        label.certificate.push_back(line("beta", beta, "<", square));
        return label;
    }
    if (banach && beta < Rational(1, 3)) {
        label.kind = RegimeKind::UndeterminedBernstein_iv;
        label.clause = "beta < 1/3 on a Banach space";
        label.certificate.push_back(line("beta", beta, "<", rat(1, 3)));
        return label;
    }
    label.clause = "playable but no clause applies";
    return label;
}

// Depth-M cover of the line attractor: 2^M intervals of diameter 2 b^M rho,
// total measure (2b)^M * 2 rho.
struct MeasureCover {
    Rational bound;
    std::vector<std::pair<Rational, Rational>> intervals;
};

inline MeasureCover measure_upper_bound(const Rational& beta, const Rational& rho,
                                        unsigned depth) {
    if (beta <= 0 || beta >= Rational(1, 2))
        throw PreconditionViolated("measure bound needs 0 < beta < 1/2");
    MeasureCover cover;
    cover.bound = pow_rational(2 * beta, depth) * 2 * rho;
    const Rational tail = pow_rational(beta, depth) * rho;
    for (const Rational& off : attractor_offsets_line(beta, rho, depth))
        cover.intervals.emplace_back(off - tail, off + tail);
    return cover;
}

// Hausdorff dimension of the attractor: log_beta(1/2) = 1 / log2(1/beta).
// Returns a double; exact for beta = 2^-k since IEEE log2 is exact on powers
// of two.
inline double dimension_formula(const Rational& beta) {
    if (beta <= 0 || beta >= Rational(1, 2))
        throw PreconditionViolated("dimension formula needs 0 < beta < 1/2");
    return 1.0 / std::log2(to_double(1 / beta));
}

// Box-counting estimate from the depth-M cover (2^M boxes of diameter
// 2 b^M rho at rho = 1); converges to the formula as depth grows.
inline double box_counting_estimate(const Rational& beta, unsigned depth) {
    if (beta <= 0 || beta >= Rational(1, 2))
        throw PreconditionViolated("box counting needs 0 < beta < 1/2");
    const double count = std::pow(2.0, static_cast<double>(depth));
    const double diameter = 2.0 * std::pow(to_double(beta), static_cast<double>(depth));
    return std::log(count) / std::log(1.0 / diameter);
}

// --- truncated minimax --------------------------------------------------------

struct DiscreteGameSpec {
    GameVariant variant;      // Schmidt or Strong (minimal-radius schedule)
    Space space;              // RealMax(1)
    Rational grid_step;       // centers are integer multiples of this
    FormalBall initial;
    IntervalUnion target;
    int depth = 0;            // plies after the initial ball
    long node_budget = 10'000'000;
};

enum class MinimaxResult { AliceWins, BobWins, Gap };

inline const char* minimax_result_name(MinimaxResult r) {
    switch (r) {
    case MinimaxResult::AliceWins: return "alice-wins";
    case MinimaxResult::BobWins: return "bob-wins";
    case MinimaxResult::Gap: return "gap";
    }
    return {};
}

struct MinimaxValue {
    MinimaxResult result = MinimaxResult::Gap;
    bool optimistic = false;  // Alice wins if the final ball meets the target
    bool pessimistic = false; // Alice wins if the final ball lies inside it
    long nodes = 0;
};

namespace detail {

struct MinimaxEval {
    bool optimistic;
    bool pessimistic;
};

inline MinimaxEval minimax_node(const DiscreteGameSpec& spec, const Rational& center,
                                const Rational& radius, int ply, long& nodes) {
    if (++nodes > spec.node_budget) throw BudgetExceeded("minimax node budget exceeded");
    if (ply == spec.depth) {
        return MinimaxEval{spec.target.meets(center - radius, center + radius),
                           spec.target.covers(center - radius, center + radius)};
    }
    const bool alice = mover_of(static_cast<std::size_t>(ply) + 2) == PlayerRole::Alice;
    const Rational factor = alice ? spec.variant.alpha : spec.variant.beta;
    const Rational next_radius = factor * radius;
    const Rational slack = radius - next_radius;
    const BigInt lo = ceil_rational((center - slack) / spec.grid_step);
    const BigInt hi = floor_rational((center + slack) / spec.grid_step);
    if (lo > hi)
        throw PreconditionViolated("grid step leaves no legal center inside a reachable ball");
    MinimaxEval acc{!alice, !alice}; // OR-identity for Alice, AND-identity for Bob
    for (BigInt k = lo; k <= hi; ++k) {
        const MinimaxEval child =
            minimax_node(spec, Rational(k) * spec.grid_step, next_radius, ply + 1, nodes);
        if (alice) {
            acc.optimistic = acc.optimistic || child.optimistic;
            acc.pessimistic = acc.pessimistic || child.pessimistic;
        } else {
            acc.optimistic = acc.optimistic && child.optimistic;
            acc.pessimistic = acc.pessimistic && child.pessimistic;
        }
    }
    return acc;
}

} // namespace detail

// Backward induction over the center-grid subgame. Radii follow the exact
// minimal-radius schedule; only centers are restricted to the grid. The two
// win senses bracket the infinite-play win condition: pessimistic implies
// optimistic, and the verdict is Gap when they disagree.
inline MinimaxValue truncated_minimax(const DiscreteGameSpec& spec) {
    if (spec.variant.kind == GameVariant::Kind::Absolute)
        throw PreconditionViolated("grid subgames cover the Schmidt and strong games");
    if (spec.space.kind != SpaceKind::RealMax || spec.space.dim != 1)
        throw PreconditionViolated("grid subgames live on RealMax(1)");
    if (spec.grid_step <= 0) throw PreconditionViolated("grid step must be positive");
    MinimaxValue value;
    const Rational center = detail::as_euclidean(spec.space, spec.initial.center).coords[0];
    const detail::MinimaxEval eval =
        detail::minimax_node(spec, center, spec.initial.radius, 0, value.nodes);
    value.optimistic = eval.optimistic;
    value.pessimistic = eval.pessimistic;
    value.result = eval.pessimistic  ? MinimaxResult::AliceWins
                   : !eval.optimistic ? MinimaxResult::BobWins
                                      : MinimaxResult::Gap;
    return value;
}

} // namespace schmidt
