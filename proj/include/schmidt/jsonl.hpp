#pragma once

// Stream-friendly serialization: one JSON object per line. Every rational is
// exact "p/q" text; no floating point appears in transcripts. All emitted
// strings come from the library's own formatters and contain no characters
// that need JSON escaping.

#include <schmidt/game.hpp>

#include <sstream>
#include <string>

namespace schmidt {

inline std::string space_tag(const Space& space) {
    switch (space.kind) {
    case SpaceKind::RealMax: return "realmax:" + std::to_string(space.dim);
    case SpaceKind::CantorTernary: return "cantor";
    case SpaceKind::BinarySeq: return "binseq";
    }
    return {};
}

inline std::optional<Space> parse_space_tag(std::string_view tag) {
    if (tag == "cantor") return Space::cantor_ternary();
    if (tag == "binseq") return Space::binary_seq();
    if (tag.rfind("realmax:", 0) == 0) {
        int dim = 0;
        for (char ch : tag.substr(8)) {
            if (ch < '0' || ch > '9') return std::nullopt;
            dim = dim * 10 + (ch - '0');
        }
        if (dim < 1 || dim > 16) return std::nullopt;
        return Space::real_max(dim);
    }
    return std::nullopt;
}

namespace detail {

inline void json_string_array(std::ostringstream& out, const std::vector<CertLine>& lines) {
    out << '[';
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out << ',';
        out << '"' << lines[i].render() << '"';
    }
    out << ']';
}

} // namespace detail

// One move as a JSON object; tree serialization tags each line with the
// node's binary path (empty for the root).
inline std::string move_line(std::size_t index_1based, const Move& move,
                             const LegalityCertificate& cert,
                             const std::string* path = nullptr) {
    std::ostringstream out;
    out << '{';
    if (path) out << "\"path\":\"" << *path << "\",";
    out << "\"n\":" << index_1based << ",\"player\":\"" << role_name(mover_of(index_1based))
        << "\",\"kind\":\"" << (move.kind == Move::Kind::Ball ? "ball" : "delete")
        << "\",\"center\":\"" << format_point(move.ball.center) << "\",\"radius\":\""
        << format_rational(move.ball.radius) << "\",\"certificate\":";
    detail::json_string_array(out, cert.lines);
    out << '}';
    return out.str();
}

inline std::string transcript_header(const Transcript& t) {
    std::ostringstream out;
    out << "{\"type\":\"transcript\",\"variant\":\"" << t.variant.name() << "\",\"alpha\":\""
        << format_rational(t.variant.alpha) << "\",\"beta\":\"" << format_rational(t.variant.beta)
        << "\",\"space\":\"" << space_tag(t.space) << "\",\"c\":\""
        << format_rational(t.space.perfectness) << "\",\"horizon\":" << t.horizon_requested
        << ",\"aborted_by\":\"" << t.aborted_by << "\"}";
    return out.str();
}

inline std::string transcript_to_jsonl(const Transcript& t, const std::string* path = nullptr) {
    std::ostringstream out;
    if (!path) out << transcript_header(t) << '\n';
    for (std::size_t i = 0; i < t.moves.size(); ++i)
        out << move_line(i + 1, t.moves[i], t.certificates[i], path) << '\n';
    return out.str();
}

} // namespace schmidt
