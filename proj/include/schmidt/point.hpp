#pragma once

// Points of the three concrete spaces. All representations are finite and
// canonical, so structural equality decides point equality.

#include <schmidt/errors.hpp>
#include <schmidt/rational.hpp>

#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace schmidt {

struct EuclideanPoint {
    std::vector<Rational> coords;

    EuclideanPoint() = default;
    explicit EuclideanPoint(std::vector<Rational> c) : coords(std::move(c)) {
        if (coords.empty()) throw Error("euclidean point needs dimension >= 1");
    }
    explicit EuclideanPoint(Rational x) : coords{std::move(x)} {}

    int dim() const { return static_cast<int>(coords.size()); }
    bool operator==(const EuclideanPoint&) const = default;
};

// Left endpoint of a Cantor construction interval: 0.t1 t2 ... tk in base 3
// with digits in {0,2}. Canonical form strips trailing zeros, so the value map
// is injective. The empty string is the point 0.
struct CantorPoint {
    std::string digits;

    CantorPoint() = default;
    explicit CantorPoint(std::string d) : digits(std::move(d)) {
        for (char ch : digits)
            if (ch != '0' && ch != '2') throw Error("cantor digit must be 0 or 2");
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
    }

    Rational value() const {
        Rational v = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it)
            v = (v + (*it - '0')) / 3;
        return v;
    }
    bool operator==(const CantorPoint&) const = default;
};

// Infinite binary sequence with a finite description: explicit prefix followed
// by a constant tail digit. Canonical form trims prefix digits equal to the
// tail, so equality of descriptions is equality of sequences.
struct BinarySeqPoint {
    std::string prefix;
    char tail = '0';

    BinarySeqPoint() = default;
    BinarySeqPoint(std::string p, char t) : prefix(std::move(p)), tail(t) {
        if (tail != '0' && tail != '1') throw Error("binary tail digit must be 0 or 1");
        for (char ch : prefix)
            if (ch != '0' && ch != '1') throw Error("binary digit must be 0 or 1");
        while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
    }

    char digit(std::size_t i) const { return i < prefix.size() ? prefix[i] : tail; }
    bool operator==(const BinarySeqPoint&) const = default;
};

using Point = std::variant<EuclideanPoint, CantorPoint, BinarySeqPoint>;

inline Point euclidean(std::initializer_list<Rational> coords) {
    return EuclideanPoint(std::vector<Rational>(coords));
}
inline Point euclidean1(Rational x) { return EuclideanPoint(std::move(x)); }
inline Point cantor(std::string digits) { return CantorPoint(std::move(digits)); }
inline Point binseq(std::string prefix, char tail) {
    return BinarySeqPoint(std::move(prefix), tail);
}

// Canonical text: euclidean "1/2,0/1", cantor "c:020", binary "b:0101|0".
inline std::string format_point(const Point& p) {
    struct V {
        std::string operator()(const EuclideanPoint& e) const {
            std::ostringstream out;
            for (std::size_t i = 0; i < e.coords.size(); ++i) {
                if (i) out << ',';
                out << format_rational(e.coords[i]);
            }
            return out.str();
        }
        std::string operator()(const CantorPoint& c) const { return "c:" + c.digits; }
        std::string operator()(const BinarySeqPoint& b) const {
            return "b:" + b.prefix + "|" + b.tail;
        }
    };
    return std::visit(V{}, p);
}

inline std::optional<Point> parse_point(std::string_view text) {
    if (text.rfind("c:", 0) == 0) {
        std::string digits(text.substr(2));
        for (char ch : digits)
            if (ch != '0' && ch != '2') return std::nullopt;
        return cantor(std::move(digits));
    }
    if (text.rfind("b:", 0) == 0) {
        const auto bar = text.find('|');
        if (bar == std::string_view::npos || bar + 2 != text.size()) return std::nullopt;
        std::string prefix(text.substr(2, bar - 2));
        const char tail = text[bar + 1];
        if (tail != '0' && tail != '1') return std::nullopt;
        for (char ch : prefix)
            if (ch != '0' && ch != '1') return std::nullopt;
        return binseq(std::move(prefix), tail);
    }
    std::vector<Rational> coords;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        auto r = parse_rational(text.substr(start, comma - start));
        if (!r) return std::nullopt;
        coords.push_back(*r);
        start = comma + 1;
        if (comma == text.size()) break;
    }
    if (coords.empty()) return std::nullopt;
    return EuclideanPoint(std::move(coords));
}

} // namespace schmidt
