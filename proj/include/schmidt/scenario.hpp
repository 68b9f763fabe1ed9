#pragma once

// Declarative scenario configs (key=value text, exact rationals as "p/q"),
// plus the name+argument registries that turn strategy and target specs into
// live objects. serialize/parse round-trips byte for byte.

#include <schmidt/game.hpp>
#include <schmidt/jsonl.hpp>
#include <schmidt/strategies.hpp>

#include <map>
#include <sstream>
#include <string>

namespace schmidt {

struct ScenarioConfig {
    std::string variant = "schmidt"; // schmidt | strong | absolute
    Rational alpha = rat(1, 2);
    Rational beta = rat(1, 2);
    std::string space = "realmax:1";
    std::optional<Rational> c; // override the declared perfectness constant
    std::string center = "0/1";
    Rational radius = rat(1);
    std::string alice = "min-radius";
    std::string bob = "min-radius";
    int horizon = 8;
    std::string target = "all";
    std::uint64_t seed = 0;

    bool operator==(const ScenarioConfig&) const = default;
};

inline std::string serialize_scenario(const ScenarioConfig& s) {
    std::ostringstream out;
    out << "variant=" << s.variant << '\n';
    out << "alpha=" << format_rational(s.alpha) << '\n';
    out << "beta=" << format_rational(s.beta) << '\n';
    out << "space=" << s.space << '\n';
    if (s.c) out << "c=" << format_rational(*s.c) << '\n';
    out << "center=" << s.center << '\n';
    out << "radius=" << format_rational(s.radius) << '\n';
    out << "alice=" << s.alice << '\n';
    out << "bob=" << s.bob << '\n';
    out << "horizon=" << s.horizon << '\n';
    out << "target=" << s.target << '\n';
    out << "seed=" << s.seed << '\n';
    return out.str();
}

// Returns nullopt and fills `error` on the first malformed line.
inline std::optional<ScenarioConfig> parse_scenario(std::string_view text, std::string& error) {
    ScenarioConfig s;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            error = "expected key=value, got '" + std::string(line) + "'";
            return std::nullopt;
        }
        const std::string key(line.substr(0, eq));
        const std::string value(line.substr(eq + 1));
        auto need_rational = [&](Rational& slot) {
            auto r = parse_rational(value);
            if (!r) {
                error = "bad rational for " + key + ": '" + value + "'";
                return false;
            }
            slot = *r;
            return true;
        };
        if (key == "variant") s.variant = value;
        else if (key == "alpha") {
            if (!need_rational(s.alpha)) return std::nullopt;
        } else if (key == "beta") {
            if (!need_rational(s.beta)) return std::nullopt;
        } else if (key == "space") s.space = value;
        else if (key == "c") {
            Rational c;
            if (!need_rational(c)) return std::nullopt;
            s.c = c;
        } else if (key == "center") s.center = value;
        else if (key == "radius") {
            if (!need_rational(s.radius)) return std::nullopt;
        } else if (key == "alice") s.alice = value;
        else if (key == "bob") s.bob = value;
        else if (key == "horizon" || key == "seed") {
            try {
                if (key == "horizon") s.horizon = std::stoi(value);
                else s.seed = std::stoull(value);
            } catch (const std::exception&) {
                error = "bad integer for " + key + ": '" + value + "'";
                return std::nullopt;
            }
        } else if (key == "target") s.target = value;
        else {
            error = "unknown key '" + key + "'";
            return std::nullopt;
        }
    }
    return s;
}

namespace detail {

// Split "name(k=v,k=v)" into name and arguments. Commas split arguments only
// when followed by another key=, so point values may contain commas.
struct StrategySpec {
    std::string name;
    std::map<std::string, std::string> args;
};

inline std::optional<StrategySpec> parse_strategy_spec(std::string_view text,
                                                       std::string& error) {
    StrategySpec spec;
    const auto open = text.find('(');
    if (open == std::string_view::npos) {
        spec.name = std::string(text);
        return spec;
    }
    if (text.back() != ')') {
        error = "missing ')' in strategy spec '" + std::string(text) + "'";
        return std::nullopt;
    }
    spec.name = std::string(text.substr(0, open));
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    while (!body.empty()) {
        // Find the comma that starts the next key=value, if any.
        std::size_t split = body.size();
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] != ',') continue;
            const auto eq = body.find('=', i + 1);
            const auto comma = body.find(',', i + 1);
            if (eq != std::string_view::npos && (comma == std::string_view::npos || eq < comma)) {
                split = i;
                break;
            }
        }
        const std::string_view item = body.substr(0, split);
        body = split < body.size() ? body.substr(split + 1) : std::string_view{};
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            error = "expected key=value argument, got '" + std::string(item) + "'";
            return std::nullopt;
        }
        spec.args[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    }
    return spec;
}

inline Point require_point(const std::map<std::string, std::string>& args,
                           const std::string& key) {
    const auto it = args.find(key);
    if (it == args.end()) throw Error("strategy spec needs argument '" + key + "'");
    auto p = parse_point(it->second);
    if (!p) throw Error("bad point for '" + key + "': '" + it->second + "'");
    return *p;
}

inline Rational require_rational(const std::map<std::string, std::string>& args,
                                 const std::string& key) {
    const auto it = args.find(key);
    if (it == args.end()) throw Error("strategy spec needs argument '" + key + "'");
    auto r = parse_rational(it->second);
    if (!r) throw Error("bad rational for '" + key + "': '" + it->second + "'");
    return *r;
}

} // namespace detail

inline GameVariant make_variant(const ScenarioConfig& s) {
    if (s.variant == "schmidt") return GameVariant::schmidt(s.alpha, s.beta);
    if (s.variant == "strong") return GameVariant::strong(s.alpha, s.beta);
    if (s.variant == "absolute") return GameVariant::absolute(s.beta);
    throw Error("unknown variant '" + s.variant + "'");
}

inline Space make_space(const ScenarioConfig& s) {
    auto space = parse_space_tag(s.space);
    if (!space) throw Error("unknown space '" + s.space + "'");
    if (s.c) space->perfectness = *s.c;
    return *space;
}

inline FormalBall make_initial(const ScenarioConfig& s) {
    auto center = parse_point(s.center);
    if (!center) throw Error("bad center '" + s.center + "'");
    return FormalBall(*center, s.radius);
}

// Strategies by name + arguments, e.g. "avoid-point(y=0/1,c=1/2)" or
// "banach-avoid(x0=0/1,v=e1)".
inline Strategy make_strategy(const std::string& text, PlayerRole role, const ScenarioConfig& s) {
    std::string error;
    auto spec = detail::parse_strategy_spec(text, error);
    if (!spec) throw Error(error);
    const auto& args = spec->args;
    if (spec->name == "min-radius") return min_radius(make_variant(s), role);
    if (spec->name == "copy-radius") return copy_radius(role);
    if (spec->name == "random") {
        std::uint64_t seed = s.seed;
        if (const auto it = args.find("seed"); it != args.end()) seed = std::stoull(it->second);
        return random_legal(role, seed);
    }
    if (spec->name == "avoid-point") {
        Rational c = make_space(s).perfectness;
        if (args.count("c")) c = detail::require_rational(args, "c");
        return schmidt_avoid_point(detail::require_point(args, "y"), c, role);
    }
    if (spec->name == "center-delete") return absolute_center_delete();
    if (spec->name == "absolute-avoid")
        return absolute_avoid_point(detail::require_point(args, "y"));
    if (spec->name == "banach-avoid") {
        const Point x0 = detail::require_point(args, "x0");
        int axis = 0;
        if (const auto it = args.find("v"); it != args.end()) {
            if (it->second.size() < 2 || it->second[0] != 'e')
                throw Error("banach-avoid direction must be e<k>");
            axis = std::stoi(it->second.substr(1)) - 1;
        }
        return banach_bob_avoid(std::get<EuclideanPoint>(x0), axis);
    }
    if (spec->name == "chaser")
        return target_chaser(detail::require_point(args, "t"), role);
    if (spec->name == "threshold-control") {
        const auto it = args.find("digit");
        const char digit = it == args.end() ? '1' : it->second.at(0);
        return threshold_control(role, digit);
    }
    throw Error("unknown strategy '" + spec->name + "'");
}

// Targets: "all", "point:<pt>", "complement-point:<pt>",
// "complement-ball:<pt>@<rat>", "intervals:a..b;c..d".
inline TargetSet make_target(const std::string& text) {
    if (text == "all") return target_everything();
    auto point_after = [&](std::size_t prefix) {
        auto p = parse_point(std::string_view(text).substr(prefix));
        if (!p) throw Error("bad point in target '" + text + "'");
        return *p;
    };
    if (text.rfind("point:", 0) == 0) return target_point(point_after(6));
    if (text.rfind("complement-point:", 0) == 0)
        return target_complement_point(point_after(17));
    if (text.rfind("complement-ball:", 0) == 0) {
        const std::string_view body = std::string_view(text).substr(16);
        const auto at = body.rfind('@');
        if (at == std::string_view::npos) throw Error("complement-ball needs <center>@<radius>");
        auto p = parse_point(body.substr(0, at));
        auto r = parse_rational(body.substr(at + 1));
        if (!p || !r) throw Error("bad ball in target '" + text + "'");
        return target_complement_ball(FormalBall(*p, *r));
    }
    if (text.rfind("intervals:", 0) == 0) {
        IntervalUnion u;
        std::string_view body = std::string_view(text).substr(10);
        while (!body.empty()) {
            auto semi = body.find(';');
            if (semi == std::string_view::npos) semi = body.size();
            const std::string_view item = body.substr(0, semi);
            body = semi < body.size() ? body.substr(semi + 1) : std::string_view{};
            const auto dots = item.find("..");
            if (dots == std::string_view::npos) throw Error("interval needs 'a..b'");
            auto lo = parse_rational(item.substr(0, dots));
            auto hi = parse_rational(item.substr(dots + 2));
            if (!lo || !hi || *lo > *hi) throw Error("bad interval '" + std::string(item) + "'");
            u.intervals.emplace_back(*lo, *hi);
        }
        return target_intervals(std::move(u));
    }
    throw Error("unknown target '" + text + "'");
}

inline Transcript run_scenario(const ScenarioConfig& s) {
    const GameVariant variant = make_variant(s);
    const Space space = make_space(s);
    return run_game(variant, space, make_strategy(s.alice, PlayerRole::Alice, s),
                    make_strategy(s.bob, PlayerRole::Bob, s), make_initial(s), s.horizon);
}

} // namespace schmidt
