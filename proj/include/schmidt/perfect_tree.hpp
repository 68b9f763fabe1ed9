#pragma once

// Finite-depth perfect-set construction: the split lemma (two sigma_A-
// compatible extensions of a prefix with small, disjoint enclosures) and the
// binary-tree embedding built from it.
//
// split() locates the first continuation's limit only up to an enclosure
// B(x_hat, rho_hat) and certifies every gap against that enclosure, not the
// ideal point. The stage-A target rho_hat < kappa*rho_A / (2(1+c)) with
// kappa = c(1-2b) - b (positive in the alpha,beta < c/(1+2c) regime) makes
// the uniform-perfectness shell around x_hat clear the enclosure a priori:
// the witness z has d(z, x_hat) > cR > b*rho_A + rho_hat for
// R = (1-2b)*rho_A - rho_hat, while d(z, x_A) <= R + b*rho_A + rho_hat =
// (1-b)*rho_A keeps the move legal.

#include <schmidt/game.hpp>
#include <schmidt/geometry.hpp>
#include <schmidt/jsonl.hpp>
#include <schmidt/strategies.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace schmidt {

struct SplitPair {
    Transcript first;  // refines the located enclosure
    Transcript second; // the avoiding branch
    Rational diam_first;
    Rational diam_second;
    Rational gap; // d(centers) - r1 - r2 > 0, exact
};

namespace detail {

// Extend until the last ball's radius is <= target (sigma_A versus the
// minimal-radius Bob). Throws PrecisionExhausted at the ply cap.
inline void extend_until_radius(Transcript& t, const Strategy& sigma_a, const Strategy& bob,
                                const Rational& target, int max_plies) {
    for (int ply = 0; ply < max_plies; ++ply) {
        if (t.last_ball().radius <= target) return;
        const GameContext ctx{t.variant, t.space, t.history()};
        const Strategy& mover =
            mover_of(t.moves.size() + 1) == PlayerRole::Alice ? sigma_a : bob;
        Move move = mover.next(ctx);
        LegalityCertificate cert = validate_move(t.variant, t.space, t.history(), move);
        if (!cert.ok)
            throw StrategyIllegalMove("split: illegal move from '" + mover.name + "': " +
                                          cert.reason,
                                      std::move(cert));
        t.append(std::move(move), std::move(cert));
    }
    if (t.last_ball().radius > target)
        throw PrecisionExhausted("split: ply cap reached before radius " +
                                 format_rational(target));
}

} // namespace detail

// Ply cap for one split, scaled the way the forced (alpha*beta) schedule
// shrinks: enough rounds to cross the target plus generous slack.
inline int split_ply_cap(const GameVariant& v) {
    const Rational step = v.alpha * v.beta;
    // plies for one factor-2 shrink: ceil(log_{1/step} 2) full rounds
    int rounds = 1;
    Rational power = step;
    while (power > Rational(1, 2) && rounds < 64) {
        power *= step;
        ++rounds;
    }
    return 40 * rounds;
}

inline SplitPair split(const Strategy& sigma_a, const Transcript& base, const Rational& r,
                       int max_plies = 0) {
    if (sigma_a.role != PlayerRole::Alice)
        throw PreconditionViolated("split drives an Alice strategy");
    const GameVariant& v = base.variant;
    const Space& space = base.space;
    if (v.kind == GameVariant::Kind::Absolute)
        throw RegimeUnsupported("split supports the Schmidt and strong games");
    if (r <= 0) throw PreconditionViolated("split: r must be positive");
    if (base.moves.empty()) throw PreconditionViolated("split: base prefix needs a ball");
    const Rational c = space.perfectness;
    const Rational kappa = c * (1 - 2 * v.beta) - v.beta;
    if (kappa <= 0)
        throw RegimeUnsupported("split needs beta < c/(1+2c), got beta = " +
                                format_rational(v.beta));
    if (max_plies == 0) max_plies = split_ply_cap(v);

    const Strategy bob_min = min_radius(v, PlayerRole::Bob);

    // Make Bob the next mover so his reply scale rho_A is known.
    Transcript pre = base;
    if (mover_of(pre.moves.size() + 1) == PlayerRole::Alice) {
        const GameContext ctx{v, space, pre.history()};
        Move move = sigma_a.next(ctx);
        LegalityCertificate cert = validate_move(v, space, pre.history(), move);
        if (!cert.ok) throw StrategyIllegalMove("split: sigma_a illegal", std::move(cert));
        pre.append(std::move(move), std::move(cert));
    }
    const FormalBall anchor = pre.last_ball(); // Bob moves inside this ball
    const Rational rho_a = anchor.radius;

    // Stage A: refine tau_1 until its enclosure is small enough for the
    // a-priori shell clearance, and already below the requested diameter.
    const Rational rho_hat_target =
        rational_min(r / 4, kappa * rho_a / (2 * (1 + c)));
    Transcript tau1 = pre;
    detail::extend_until_radius(tau1, sigma_a, bob_min, rho_hat_target, max_plies);
    const FormalBall located = tau1.last_ball(); // (x_hat, rho_hat)

    // Stage B: Bob's first move in tau_2 clears B(x_hat, rho_hat) entirely.
    Transcript tau2 = pre;
    {
        const Rational bob_radius = v.beta * rho_a;
        Point z = anchor.center;
        if (distance(space, anchor.center, located.center) <=
            bob_radius + located.radius) {
            const Rational shell = (1 - 2 * v.beta) * rho_a - located.radius;
            z = uniform_perfect_witness(space, located.center, shell, c);
        }
        const Move move = Move::play(FormalBall(z, bob_radius));
        LegalityCertificate cert = validate_move(v, space, tau2.history(), move);
        if (!cert.ok)
            throw StrategyIllegalMove("split: avoiding move illegal", std::move(cert));
        // Exact clearance of the located enclosure.
        if (!(distance(space, z, located.center) > bob_radius + located.radius))
            throw PrecisionExhausted("split: avoiding ball does not clear the enclosure");
        tau2.append(move, std::move(cert));
    }
    detail::extend_until_radius(tau2, sigma_a, bob_min, r / 4, max_plies);

    const FormalBall e1 = tau1.enclosure();
    const FormalBall e2 = tau2.enclosure();
    const Rational gap = distance(space, e1.center, e2.center) - e1.radius - e2.radius;
    const Rational d1 = ball_diameter_upper(space, e1);
    const Rational d2 = ball_diameter_upper(space, e2);
    if (!(gap > 0) || !(d1 < r) || !(d2 < r))
        throw PrecisionExhausted("split postcondition failed");
    return SplitPair{std::move(tau1), std::move(tau2), d1, d2, gap};
}

struct TreeNode {
    std::string path; // binary string, root is ""
    Transcript play;
};

struct PerfectTree {
    int depth = 0;
    std::string sigma_name;
    std::vector<TreeNode> nodes; // breadth-first, 2^{j} nodes at level j

    const TreeNode& node(const std::string& path) const {
        for (const TreeNode& n : nodes)
            if (n.path == path) return n;
        throw Error("no tree node at path " + path);
    }
    std::vector<const TreeNode*> level(int j) const {
        std::vector<const TreeNode*> out;
        for (const TreeNode& n : nodes)
            if (static_cast<int>(n.path.size()) == j) out.push_back(&n);
        return out;
    }
};

// g: binary strings -> sigma_A-compatible prefixes; children of a level-j
// node are produced by split with r = 2^-j, so enclosures at level j+1 have
// diameter < 2^-j and siblings are exactly disjoint.
inline PerfectTree build_perfect_tree(const Strategy& sigma_a, const Transcript& root,
                                      int depth) {
    if (depth < 0 || depth > 10)
        throw PreconditionViolated("tree depth must lie in [0, 10]");
    PerfectTree tree;
    tree.depth = depth;
    tree.sigma_name = sigma_a.name;
    tree.nodes.push_back(TreeNode{"", root});
    std::vector<TreeNode*> frontier;
    std::size_t level_start = 0;
    for (int j = 0; j < depth; ++j) {
        const Rational r = pow_rational(rat(1, 2), static_cast<unsigned>(j));
        const std::size_t level_end = tree.nodes.size();
        for (std::size_t i = level_start; i < level_end; ++i) {
            // Copies: push_back below may reallocate the node storage.
            const std::string path = tree.nodes[i].path;
            const Transcript play = tree.nodes[i].play;
            SplitPair pair = split(sigma_a, play, r);
            tree.nodes.push_back(TreeNode{path + "0", std::move(pair.first)});
            tree.nodes.push_back(TreeNode{path + "1", std::move(pair.second)});
        }
        level_start = level_end;
    }
    return tree;
}

struct TreeCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct LevelStat {
    int level = 0;
    int count = 0;
    Rational min_gap;     // over distinct pairs at this level (0 if < 2 nodes)
    Rational max_diameter;
};

struct TreeReport {
    bool all_passed = true;
    std::vector<TreeCheck> checks;
    std::vector<LevelStat> levels;

    void add(std::string name, bool passed, std::string detail = {}) {
        all_passed = all_passed && passed;
        checks.push_back(TreeCheck{std::move(name), passed, std::move(detail)});
    }

    std::string to_csv() const {
        std::ostringstream out;
        out << "level,count,min_gap,max_diameter\n";
        for (const LevelStat& s : levels)
            out << s.level << ',' << s.count << ',' << format_rational(s.min_gap) << ','
                << format_rational(s.max_diameter) << '\n';
        return out.str();
    }
};

// Structural audit: monotonicity (parent plays are prefixes), per-level
// cardinality 2^j, diameter bounds diam < 2^-(j-1), pairwise disjointness
// with exact positive gaps (injectivity at every level), and, if sigma_a is
// supplied, sigma_A-compatibility of every even move.
inline TreeReport verify_tree(const PerfectTree& tree, const Strategy* sigma_a = nullptr) {
    TreeReport report;
    const Space& space = tree.nodes.front().play.space;

    bool monotone = true, nesting = true;
    for (const TreeNode& n : tree.nodes) {
        if (n.path.empty()) continue;
        const TreeNode& parent = tree.node(n.path.substr(0, n.path.size() - 1));
        if (parent.play.moves.size() > n.play.moves.size()) monotone = false;
        for (std::size_t i = 0; monotone && i < parent.play.moves.size(); ++i)
            if (!(parent.play.moves[i] == n.play.moves[i])) monotone = false;
        if (!ball_subset(space, n.play.enclosure(), parent.play.enclosure()))
            nesting = false;
    }
    report.add("monotone", monotone);
    report.add("child-enclosures-nested", nesting);

    bool cardinality = true, diameters = true, disjoint = true;
    for (int j = 0; j <= tree.depth; ++j) {
        const auto level = tree.level(j);
        cardinality = cardinality && level.size() == (1u << j);
        LevelStat stat;
        stat.level = j;
        stat.count = static_cast<int>(level.size());
        stat.min_gap = 0;
        stat.max_diameter = 0;
        bool first_gap = true;
        for (std::size_t a = 0; a < level.size(); ++a) {
            const FormalBall ea = level[a]->play.enclosure();
            stat.max_diameter =
                rational_max(stat.max_diameter, ball_diameter_upper(space, ea));
            for (std::size_t b = a + 1; b < level.size(); ++b) {
                const FormalBall eb = level[b]->play.enclosure();
                const Rational gap =
                    distance(space, ea.center, eb.center) - ea.radius - eb.radius;
                if (!(gap > 0)) disjoint = false;
                if (first_gap || gap < stat.min_gap) stat.min_gap = gap;
                first_gap = false;
            }
        }
        if (j >= 1) {
            const Rational bound = pow_rational(rat(1, 2), static_cast<unsigned>(j - 1));
            if (!(stat.max_diameter < bound)) diameters = false;
        }
        report.levels.push_back(std::move(stat));
    }
    report.add("cardinality", cardinality);
    report.add("diameters", diameters);
    report.add("disjoint-leaves", disjoint, disjoint ? "" : "level gaps not all positive");

    if (sigma_a) {
        bool compatible = true;
        for (const TreeNode& n : tree.nodes) {
            const Transcript& t = n.play;
            for (std::size_t i = 1; i < t.moves.size(); ++i) {
                if (mover_of(i + 1) != PlayerRole::Alice) continue;
                const GameContext ctx{t.variant, t.space,
                                      History(t.moves.data(), i)};
                if (!(sigma_a->next(ctx) == t.moves[i])) compatible = false;
            }
        }
        report.add("sigma-compatible", compatible);
    }
    return report;
}

// JSONL: every move line of every node tagged with its binary path.
inline std::string tree_to_jsonl(const PerfectTree& tree) {
    std::ostringstream out;
    for (const TreeNode& n : tree.nodes) out << transcript_to_jsonl(n.play, &n.path);
    return out.str();
}

} // namespace schmidt
