#include <catch2/catch.hpp>

#include <schmidt/perfect_tree.hpp>

using namespace schmidt;

namespace {

const Space kReal1 = Space::real_max(1);

Transcript opening_transcript(const GameVariant& v, const Space& space, FormalBall initial) {
    Transcript t{v, space};
    Move move = Move::play(std::move(initial));
    t.append(move, validate_move(v, space, {}, move));
    return t;
}

} // namespace

TEST_CASE("split produces certified small disjoint extensions", "[tree]") {
    const GameVariant v = GameVariant::schmidt(rat(1, 5), rat(1, 5));
    const auto sigma = min_radius(v, PlayerRole::Alice);
    const Transcript base =
        opening_transcript(v, kReal1, FormalBall(euclidean1(rat(0)), rat(1)));

    const SplitPair pair = split(sigma, base, rat(1, 4));
    CHECK(pair.gap > 0);
    CHECK(pair.diam_first < rat(1, 4));
    CHECK(pair.diam_second < rat(1, 4));
    // Both extend the base prefix.
    CHECK(pair.first.moves[0] == base.moves[0]);
    CHECK(pair.second.moves[0] == base.moves[0]);
    // Exact disjointness of the enclosures, re-derived.
    const FormalBall e1 = pair.first.enclosure(), e2 = pair.second.enclosure();
    CHECK(distance(kReal1, e1.center, e2.center) > e1.radius + e2.radius);

    // Oracle for the forced round count: the minimal-radius schedule needs
    // exactly `forced(target)` plies to push the radius under the stage-A
    // target, and the located branch must match it.
    auto forced = [&](const Rational& target) {
        int plies = 0;
        Rational radius = rat(1);
        while (radius > target) {
            radius *= plies % 2 == 0 ? v.alpha : v.beta;
            ++plies;
        }
        return plies;
    };
    const Rational kappa = kReal1.perfectness * (1 - 2 * v.beta) - v.beta;
    const Rational rho_a = v.alpha; // Bob's reply scale after Alice's first move
    const Rational rho_hat_target =
        rational_min(rat(1, 4) / 4, kappa * rho_a / (2 * (1 + kReal1.perfectness)));
    CHECK(static_cast<int>(pair.first.plies()) == forced(rho_hat_target));

    // A base already smaller than r still splits into two disjoint pieces.
    const SplitPair again = split(sigma, pair.first, rat(1, 4));
    CHECK(again.gap > 0);
    CHECK(again.diam_first < rat(1, 4));

    // Unsupported regime: beta at or above c/(1+2c).
    const GameVariant fat = GameVariant::schmidt(rat(1, 5), rat(1, 4));
    const Transcript base2 =
        opening_transcript(fat, kReal1, FormalBall(euclidean1(rat(0)), rat(1)));
    CHECK_THROWS_AS(split(min_radius(fat, PlayerRole::Alice), base2, rat(1, 4)),
                    RegimeUnsupported);
}

TEST_CASE("perfect tree: structure, bounds, and verification", "[tree]") {
    const GameVariant v = GameVariant::schmidt(rat(1, 5), rat(1, 5));
    const auto sigma = min_radius(v, PlayerRole::Alice);
    const Transcript root =
        opening_transcript(v, kReal1, FormalBall(euclidean1(rat(0)), rat(1)));

    // Depth 0: a single vacuously valid node.
    const PerfectTree trivial = build_perfect_tree(sigma, root, 0);
    CHECK(trivial.nodes.size() == 1);
    CHECK(verify_tree(trivial).all_passed);

    const PerfectTree tree = build_perfect_tree(sigma, root, 3);
    CHECK(tree.nodes.size() == 1 + 2 + 4 + 8);
    CHECK(tree.level(3).size() == 8);

    const TreeReport report = verify_tree(tree, &sigma);
    CHECK(report.all_passed);
    // Leaf diameters < 2^-(depth-1).
    CHECK(report.levels[3].max_diameter < rat(1, 4));
    CHECK(report.levels[3].min_gap > 0);

    // CSV has one row per level plus the header.
    const std::string csv = report.to_csv();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.rfind("level,count,min_gap,max_diameter", 0) == 0);

    // JSONL serialization tags every line with a path.
    const std::string jsonl = tree_to_jsonl(tree);
    CHECK(jsonl.find("\"path\":\"\"") != std::string::npos);
    CHECK(jsonl.find("\"path\":\"010\"") != std::string::npos);

    // Negative control: merging two leaves must flag disjointness.
    PerfectTree corrupted = tree;
    TreeNode* first_leaf = nullptr;
    TreeNode* second_leaf = nullptr;
    for (TreeNode& n : corrupted.nodes)
        if (n.path.size() == 3) (first_leaf ? second_leaf : first_leaf) = &n;
    second_leaf->play = first_leaf->play;
    const TreeReport bad = verify_tree(corrupted);
    CHECK_FALSE(bad.all_passed);
    bool flagged = false;
    for (const TreeCheck& c : bad.checks)
        if (c.name == "disjoint-leaves" && !c.passed) flagged = true;
    CHECK(flagged);
}

TEST_CASE("perfect tree survives an avoid-point sigma and the strong game", "[tree]") {
    // The construction only needs sigma_A-compatibility, not a particular
    // Alice strategy: exercise a non-trivial sigma and the strong variant.
    const GameVariant v = GameVariant::schmidt(rat(1, 6), rat(1, 6));
    const auto sigma =
        schmidt_avoid_point(euclidean1(rat(1, 3)), rat(1, 2), PlayerRole::Alice);
    const Transcript root =
        opening_transcript(v, kReal1, FormalBall(euclidean1(rat(0)), rat(1)));
    const PerfectTree tree = build_perfect_tree(sigma, root, 2);
    CHECK(verify_tree(tree, &sigma).all_passed);

    const GameVariant strong_v = GameVariant::strong(rat(1, 5), rat(1, 5));
    const auto sigma2 = min_radius(strong_v, PlayerRole::Alice);
    const Transcript root2 =
        opening_transcript(strong_v, kReal1, FormalBall(euclidean1(rat(0)), rat(1)));
    const PerfectTree tree2 = build_perfect_tree(sigma2, root2, 2);
    CHECK(verify_tree(tree2, &sigma2).all_passed);
}
