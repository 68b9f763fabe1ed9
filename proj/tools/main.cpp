// Command-line surface: scenario execution (play), invariant suites (verify),
// perfect-tree construction (tree), and the analysis lab (lab). Outputs are
// deterministic: identical invocations produce byte-identical files.
//
// Exit codes: 0 success, 1 configuration/parse errors or failed verification,
// 2 a strategy returned an illegal move.

#include <CLI11.hpp>

#include <schmidt/jsonl.hpp>
#include <schmidt/lab.hpp>
#include <schmidt/perfect_tree.hpp>
#include <schmidt/scenario.hpp>
#include <schmidt/verify.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace schmidt;

// Relative outputs land under SCHMIDT_GAMES_OUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("SCHMIDT_GAMES_OUT_DIR")) {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

// Write-then-rename so concurrent scenarios never see partial files.
void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target = resolve_output(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open output file " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

Rational parse_rational_arg(const std::string& text, const std::string& flag) {
    auto r = parse_rational(text);
    if (!r) throw Error("malformed rational for " + flag + ": '" + text + "'");
    return *r;
}

int run_play(const ScenarioConfig& config, const std::string& out_path) {
    const Transcript t = run_scenario(config);
    if (!out_path.empty()) write_atomic(out_path, transcript_to_jsonl(t));
    const Outcome result = outcome(t, make_target(config.target));
    std::cout << "play variant=" << config.variant << " plies=" << t.plies()
              << " final_radius=" << format_rational(t.last_ball().radius)
              << " enclosure_radius=" << format_rational(result.enclosure.radius)
              << " winner=" << winner_name(result.winner);
    if (t.variant.kind == GameVariant::Kind::Absolute && t.moves.size() >= 3) {
        // Largest consecutive Bob radius ratio; center deletion forces < 1/2.
        Rational max_ratio = 0;
        for (std::size_t i = 2; i < t.moves.size(); i += 2)
            max_ratio = rational_max(max_ratio,
                                     t.moves[i].ball.radius / t.moves[i - 2].ball.radius);
        std::cout << " max_radius_ratio=" << format_rational(max_ratio);
    }
    if (!t.aborted_by.empty()) std::cout << " aborted_by=" << t.aborted_by;
    std::cout << '\n';
    return 0;
}

int print_properties(const std::vector<PropertyResult>& results) {
    bool ok = true;
    for (const PropertyResult& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases
                  << " cases)";
        if (!r.detail.empty()) std::cout << " " << r.detail;
        std::cout << '\n';
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

std::string csv_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == ',') out += ';';
        else out += ch;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schmidt, strong and absolute winning games on complete metric spaces"};
    app.require_subcommand(1);

    // --- play ---
    ScenarioConfig config;
    std::string alpha_text = "1/2", beta_text = "1/2", radius_text = "1/1", c_text;
    std::string out_path, config_path;
    auto* play = app.add_subcommand("play", "run one scenario and write its transcript");
    play->add_option("--config", config_path, "scenario config file (key=value lines)");
    play->add_option("--variant", config.variant, "schmidt | strong | absolute");
    play->add_option("--alpha", alpha_text, "Alice's radius factor, p/q");
    play->add_option("--beta", beta_text, "Bob's radius factor, p/q");
    play->add_option("--space", config.space, "realmax:<d> | cantor | binseq");
    play->add_option("--c", c_text, "override the declared perfectness constant");
    play->add_option("--center", config.center, "initial ball center");
    play->add_option("--radius", radius_text, "initial ball radius, p/q");
    play->add_option("--alice", config.alice, "Alice's strategy spec");
    play->add_option("--bob", config.bob, "Bob's strategy spec");
    play->add_option("--horizon", config.horizon, "plies after the initial ball");
    play->add_option("--target", config.target, "target set spec");
    play->add_option("--seed", config.seed, "seed for random(...) strategies");
    play->add_option("--out", out_path, "transcript JSONL path");

    // --- verify ---
    std::string suite;
    int verify_depth = 4;
    auto* verify = app.add_subcommand("verify", "run a module's invariant suite");
    verify->add_option("suite", suite, "geometry | engine | strategies | tree | lab")
        ->required();
    verify->add_option("--depth", verify_depth, "tree depth for the tree suite");

    // --- tree ---
    std::string tree_alpha = "1/5", tree_beta = "1/5", tree_center = "0/1",
                tree_radius = "1/1", tree_out, tree_report;
    int tree_depth = 3;
    auto* tree_cmd = app.add_subcommand("tree", "build and verify a perfect tree");
    tree_cmd->add_option("--alpha", tree_alpha, "Alice's radius factor");
    tree_cmd->add_option("--beta", tree_beta, "Bob's radius factor");
    tree_cmd->add_option("--center", tree_center, "root ball center");
    tree_cmd->add_option("--radius", tree_radius, "root ball radius");
    tree_cmd->add_option("--depth", tree_depth, "tree depth (<= 10)");
    tree_cmd->add_option("--out", tree_out, "tree JSONL path");
    tree_cmd->add_option("--report", tree_report, "verification CSV path");

    // --- lab ---
    auto* lab = app.add_subcommand("lab", "regime classification and attractor numbers");
    lab->require_subcommand(1);
    std::string lab_variant = "schmidt", lab_alpha = "1/2", lab_beta = "1/4",
                lab_c = "1/2", lab_rho = "1/1", lab_out;
    bool lab_banach = false;
    unsigned lab_depth = 3;
    auto* lab_classify = lab->add_subcommand("classify", "regime label with certificate");
    lab_classify->add_option("--variant", lab_variant, "schmidt | strong | absolute");
    lab_classify->add_option("--alpha", lab_alpha, "p/q");
    lab_classify->add_option("--beta", lab_beta, "p/q");
    lab_classify->add_option("--c", lab_c, "perfectness constant");
    lab_classify->add_flag("--banach", lab_banach, "assume a Banach space");
    lab_classify->add_option("--out", lab_out, "CSV path (default stdout)");
    auto* lab_measure = lab->add_subcommand("measure", "attractor measure upper bound");
    lab_measure->add_option("--beta", lab_beta, "p/q, below 1/2");
    lab_measure->add_option("--rho", lab_rho, "scale, p/q");
    lab_measure->add_option("--M", lab_depth, "cover depth");
    lab_measure->add_option("--out", lab_out, "CSV path (default stdout)");
    auto* lab_dimension = lab->add_subcommand("dimension", "attractor dimension numbers");
    lab_dimension->add_option("--beta", lab_beta, "p/q, below 1/2");
    lab_dimension->add_option("--depth", lab_depth, "box-counting depth");
    lab_dimension->add_option("--out", lab_out, "CSV path (default stdout)");
    std::string mm_step = "1/8", mm_center = "0/1", mm_radius = "1/1",
                mm_target = "intervals:0/1..1/2";
    int mm_depth = 2;
    auto* lab_minimax = lab->add_subcommand("minimax", "truncated grid-game values");
    lab_minimax->add_option("--alpha", lab_alpha, "p/q");
    lab_minimax->add_option("--beta", lab_beta, "p/q");
    lab_minimax->add_option("--step", mm_step, "center grid step, p/q");
    lab_minimax->add_option("--center", mm_center, "initial center, p/q");
    lab_minimax->add_option("--radius", mm_radius, "initial radius, p/q");
    lab_minimax->add_option("--target", mm_target, "intervals:a..b;c..d");
    lab_minimax->add_option("--depth", mm_depth, "plies after the initial ball");
    lab_minimax->add_option("--out", lab_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*play) {
            if (!config_path.empty()) {
                std::ifstream in{resolve_output(config_path)};
                if (!in) throw Error("cannot read config file " + config_path);
                std::ostringstream buffer;
                buffer << in.rdbuf();
                std::string error;
                auto parsed = parse_scenario(buffer.str(), error);
                if (!parsed) throw Error("config: " + error);
                config = *parsed;
            } else {
                config.alpha = parse_rational_arg(alpha_text, "--alpha");
                config.beta = parse_rational_arg(beta_text, "--beta");
                config.radius = parse_rational_arg(radius_text, "--radius");
                if (!c_text.empty()) config.c = parse_rational_arg(c_text, "--c");
            }
            return run_play(config, out_path);
        }
        if (*verify) return print_properties(verify_suite(suite, verify_depth));
        if (*tree_cmd) {
            const GameVariant v =
                GameVariant::schmidt(parse_rational_arg(tree_alpha, "--alpha"),
                                     parse_rational_arg(tree_beta, "--beta"));
            const Space space = Space::real_max(1);
            auto center = parse_point(tree_center);
            if (!center) throw Error("bad center '" + tree_center + "'");
            Transcript root{v, space};
            const Move opening =
                Move::play(FormalBall(*center, parse_rational_arg(tree_radius, "--radius")));
            root.append(opening, validate_move(v, space, {}, opening));
            const auto sigma = min_radius(v, PlayerRole::Alice);
            const PerfectTree tree = build_perfect_tree(sigma, root, tree_depth);
            const TreeReport report = verify_tree(tree, &sigma);
            if (!tree_out.empty()) write_atomic(tree_out, tree_to_jsonl(tree));
            if (!tree_report.empty()) write_atomic(tree_report, report.to_csv());
            std::cout << "tree depth=" << tree.depth << " nodes=" << tree.nodes.size()
                      << " leaves=" << tree.level(tree.depth).size()
                      << " verified=" << (report.all_passed ? "yes" : "no") << '\n';
            return report.all_passed ? 0 : 1;
        }
        if (*lab) {
            std::ostringstream csv;
            if (*lab_classify) {
                const Rational alpha = parse_rational_arg(lab_alpha, "--alpha");
                const Rational beta = parse_rational_arg(lab_beta, "--beta");
                const Rational c = parse_rational_arg(lab_c, "--c");
                const GameVariant v = lab_variant == "absolute"
                                          ? GameVariant::absolute(beta)
                                      : lab_variant == "strong"
                                          ? GameVariant::strong(alpha, beta)
                                          : GameVariant::schmidt(alpha, beta);
                const RegimeLabel label = classify_parameters(v, c, lab_banach);
                csv << "variant,alpha,beta,c,banach,label,clause,certificate\n";
                csv << lab_variant << ',' << format_rational(alpha) << ','
                    << format_rational(beta) << ',' << format_rational(c) << ','
                    << (lab_banach ? "yes" : "no") << ',' << regime_name(label.kind) << ','
                    << csv_escape(label.clause) << ',';
                for (std::size_t i = 0; i < label.certificate.size(); ++i)
                    csv << (i ? " and " : "") << csv_escape(label.certificate[i].render());
                csv << '\n';
            } else if (*lab_measure) {
                const MeasureCover cover =
                    measure_upper_bound(parse_rational_arg(lab_beta, "--beta"),
                                        parse_rational_arg(lab_rho, "--rho"), lab_depth);
                csv << "beta,rho,M,bound,intervals\n";
                csv << lab_beta << ',' << lab_rho << ',' << lab_depth << ','
                    << format_rational(cover.bound) << ',' << cover.intervals.size() << '\n';
            } else if (*lab_dimension) {
                const Rational beta = parse_rational_arg(lab_beta, "--beta");
                csv << "beta,formula,box_estimate,depth\n";
                csv << lab_beta << ',' << dimension_formula(beta) << ','
                    << box_counting_estimate(beta, lab_depth) << ',' << lab_depth << '\n';
            } else if (*lab_minimax) {
                auto center = parse_point(mm_center);
                if (!center) throw Error("bad center '" + mm_center + "'");
                if (mm_target.rfind("intervals:", 0) != 0)
                    throw Error("minimax target must be an intervals spec");
                make_target(mm_target); // validates the grammar
                IntervalUnion u;
                std::string_view body = std::string_view(mm_target).substr(10);
                while (!body.empty()) {
                    auto semi = body.find(';');
                    if (semi == std::string_view::npos) semi = body.size();
                    const auto item = body.substr(0, semi);
                    body = semi < body.size() ? body.substr(semi + 1) : std::string_view{};
                    const auto dots = item.find("..");
                    u.intervals.emplace_back(*parse_rational(item.substr(0, dots)),
                                             *parse_rational(item.substr(dots + 2)));
                }
                const DiscreteGameSpec spec{
                    GameVariant::schmidt(parse_rational_arg(lab_alpha, "--alpha"),
                                         parse_rational_arg(lab_beta, "--beta")),
                    Space::real_max(1),
                    parse_rational_arg(mm_step, "--step"),
                    FormalBall(*center, parse_rational_arg(mm_radius, "--radius")),
                    std::move(u),
                    mm_depth};
                const MinimaxValue value = truncated_minimax(spec);
                csv << "result,optimistic,pessimistic,nodes\n";
                csv << minimax_result_name(value.result) << ','
                    << (value.optimistic ? "yes" : "no") << ','
                    << (value.pessimistic ? "yes" : "no") << ',' << value.nodes << '\n';
            }
            if (lab_out.empty()) std::cout << csv.str();
            else write_atomic(lab_out, csv.str());
            return 0;
        }
    } catch (const StrategyIllegalMove& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const CertLine& line : e.certificate.lines)
            std::cerr << "  " << line.render() << (line.holds ? "  [holds]" : "  [violated]")
                      << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
