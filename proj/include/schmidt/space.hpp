#pragma once

// The three concrete complete metric spaces and exact ball geometry:
//   RealMax(d)    - Q^d with the max norm (all distances exact rationals)
//   CantorTernary - the Cantor ternary set as a subset of [0,1]
//   BinarySeq     - {0,1}^N with d(theta,psi) = 4^(-min{k : theta_k != psi_k})
//
// Formal balls are (center, radius) pairs; the formal order <=_s is
// rho2 + d(x1,x2) <= rho1, which implies set containment and is equivalent
// to it exactly in the normed space.

#include <schmidt/errors.hpp>
#include <schmidt/point.hpp>
#include <schmidt/rational.hpp>

#include <optional>
#include <set>
#include <string>

namespace schmidt {

enum class SpaceKind { RealMax, CantorTernary, BinarySeq };

struct Space {
    SpaceKind kind = SpaceKind::RealMax;
    int dim = 1;
    Rational perfectness; // declared uniform-perfectness constant c

    static Space real_max(int d, Rational c = rat(1, 2)) {
        if (d < 1) throw Error("dimension must be >= 1");
        return Space{SpaceKind::RealMax, d, std::move(c)};
    }
    static Space cantor_ternary(Rational c = rat(1, 9)) {
        return Space{SpaceKind::CantorTernary, 1, std::move(c)};
    }
    static Space binary_seq(Rational c = rat(1, 4)) {
        return Space{SpaceKind::BinarySeq, 1, std::move(c)};
    }

    bool operator==(const Space&) const = default;
};

struct FormalBall {
    Point center;
    Rational radius;

    FormalBall(Point c, Rational r) : center(std::move(c)), radius(std::move(r)) {
        if (radius <= 0) throw Error("formal ball radius must be positive");
    }
    bool operator==(const FormalBall&) const = default;
};

namespace detail {

inline const EuclideanPoint& as_euclidean(const Space& space, const Point& p) {
    const auto* e = std::get_if<EuclideanPoint>(&p);
    if (!e) throw Error("point does not belong to a RealMax space");
    if (e->dim() != space.dim)
        throw DimensionMismatch("point dimension " + std::to_string(e->dim()) +
                                " != space dimension " + std::to_string(space.dim));
    return *e;
}

inline const CantorPoint& as_cantor(const Point& p) {
    const auto* c = std::get_if<CantorPoint>(&p);
    if (!c) throw Error("point does not belong to the Cantor space");
    return *c;
}

inline const BinarySeqPoint& as_binseq(const Point& p) {
    const auto* b = std::get_if<BinarySeqPoint>(&p);
    if (!b) throw Error("point does not belong to the binary-sequence space");
    return *b;
}

} // namespace detail

inline Rational distance(const Space& space, const Point& p, const Point& q) {
    switch (space.kind) {
    case SpaceKind::RealMax: {
        const auto& a = detail::as_euclidean(space, p);
        const auto& b = detail::as_euclidean(space, q);
        Rational best = 0;
        for (int i = 0; i < space.dim; ++i)
            best = rational_max(best, rational_abs(a.coords[i] - b.coords[i]));
        return best;
    }
    case SpaceKind::CantorTernary:
        return rational_abs(detail::as_cantor(p).value() - detail::as_cantor(q).value());
    case SpaceKind::BinarySeq: {
        const auto& a = detail::as_binseq(p);
        const auto& b = detail::as_binseq(q);
        const std::size_t scan = std::max(a.prefix.size(), b.prefix.size());
        for (std::size_t i = 0; i < scan; ++i)
            if (a.digit(i) != b.digit(i))
                return Rational(1, pow(BigInt(4), static_cast<unsigned>(i)));
        if (a.tail == b.tail) return 0;
        return Rational(1, pow(BigInt(4), static_cast<unsigned>(scan)));
    }
    }
    throw Error("unreachable");
}

// (x2,rho2) <=_s (x1,rho1)  iff  rho2 + d(x1,x2) <= rho1.
inline bool formal_leq(const Space& space, const FormalBall& inner, const FormalBall& outer) {
    return inner.radius + distance(space, inner.center, outer.center) <= outer.radius;
}

inline bool ball_contains_point(const Space& space, const FormalBall& ball, const Point& p) {
    return distance(space, ball.center, p) <= ball.radius;
}

// --- Cantor set interval machinery -----------------------------------------
//
// The digit machine below walks the ternary expansion of a rational. Each
// step keeps the denominator of the running remainder a divisor of the
// original one, so a revisited remainder means the expansion is purely
// periodic over {0,2} from that state on; such a state is itself a Cantor
// point and is its own min/max. The iteration cap guards against denominators
// with astronomically long all-{0,2} digit runs.

inline constexpr int kCantorIterationCap = 100000;

// min{ y in Cantor set : y >= a }, or nullopt when a > 1.
inline std::optional<Rational> cantor_min_at_least(const Rational& a) {
    if (a > 1) return std::nullopt;
    Rational base = 0, scale = 1, cur = a;
    std::set<Rational> seen;
    for (int iter = 0; iter < kCantorIterationCap; ++iter) {
        if (cur <= 0) return base;
        if (cur >= 1) return base + scale;
        if (!seen.insert(cur).second) return base + scale * cur;
        if (3 * cur <= 1) {
            scale /= 3;
            cur *= 3;
        } else if (3 * cur <= 2) {
            return base + scale * Rational(2, 3);
        } else {
            base += scale * Rational(2, 3);
            scale /= 3;
            cur = 3 * cur - 2;
        }
    }
    throw Error("cantor_min_at_least: expansion too deep");
}

// max{ y in Cantor set : y <= b }, or nullopt when b < 0.
inline std::optional<Rational> cantor_max_at_most(const Rational& b) {
    if (b < 0) return std::nullopt;
    Rational base = 0, scale = 1, cur = b;
    std::set<Rational> seen;
    for (int iter = 0; iter < kCantorIterationCap; ++iter) {
        if (cur >= 1) return base + scale;
        if (cur <= 0) return base;
        if (!seen.insert(cur).second) return base + scale * cur;
        if (3 * cur < 1) {
            scale /= 3;
            cur *= 3;
        } else if (3 * cur < 2) {
            return base + scale * Rational(1, 3);
        } else {
            base += scale * Rational(2, 3);
            scale /= 3;
            cur = 3 * cur - 2;
        }
    }
    throw Error("cantor_max_at_most: expansion too deep");
}

// Does the Cantor set meet the closed interval [a, b]?
inline bool cantor_meets_closed(const Rational& a, const Rational& b) {
    if (a > b) return false;
    auto m = cantor_min_at_least(a);
    return m && *m <= b;
}

// --- Binary-sequence cylinders ----------------------------------------------

// Depth of the cylinder traced by a ball of radius rho: the least k with
// 4^-k <= rho. The ball B(x, rho) is exactly {y : y agrees with x below k}.
inline unsigned binseq_cylinder_depth(const Rational& rho) {
    unsigned k = 0;
    Rational power = 1;
    while (power > rho) {
        power /= 4;
        ++k;
    }
    return k;
}

// Set containment of the traced balls. RealMax decides per coordinate
// (independent of formal_leq's single max-norm inequality); CantorTernary
// intersects the interval trace with the set; BinarySeq compares cylinders.
inline bool ball_subset(const Space& space, const FormalBall& inner, const FormalBall& outer) {
    switch (space.kind) {
    case SpaceKind::RealMax: {
        const auto& a = detail::as_euclidean(space, inner.center);
        const auto& b = detail::as_euclidean(space, outer.center);
        for (int i = 0; i < space.dim; ++i) {
            if (a.coords[i] - inner.radius < b.coords[i] - outer.radius) return false;
            if (a.coords[i] + inner.radius > b.coords[i] + outer.radius) return false;
        }
        return true;
    }
    case SpaceKind::CantorTernary: {
        const Rational ci = detail::as_cantor(inner.center).value();
        const Rational co = detail::as_cantor(outer.center).value();
        const Rational lo2 = ci - inner.radius, hi2 = ci + inner.radius;
        const Rational lo1 = co - outer.radius, hi1 = co + outer.radius;
        // A Cantor point of the inner trace escaping the outer interval on
        // either side is the only way containment can fail.
        if (auto m = cantor_min_at_least(lo2); m && *m <= hi2 && *m < lo1) return false;
        if (auto M = cantor_max_at_most(hi2); M && *M >= lo2 && *M > hi1) return false;
        return true;
    }
    case SpaceKind::BinarySeq: {
        const unsigned k_in = binseq_cylinder_depth(inner.radius);
        const unsigned k_out = binseq_cylinder_depth(outer.radius);
        if (k_in < k_out) return false;
        const auto& a = detail::as_binseq(inner.center);
        const auto& b = detail::as_binseq(outer.center);
        for (unsigned i = 0; i < k_out; ++i)
            if (a.digit(i) != b.digit(i)) return false;
        return true;
    }
    }
    throw Error("unreachable");
}

// Exact upper bound for the diameter of the traced ball.
inline Rational ball_diameter_upper(const Space& space, const FormalBall& ball) {
    switch (space.kind) {
    case SpaceKind::RealMax:
    case SpaceKind::CantorTernary:
        return 2 * ball.radius;
    case SpaceKind::BinarySeq: {
        const unsigned k = binseq_cylinder_depth(ball.radius);
        return Rational(1, pow(BigInt(4), k));
    }
    }
    throw Error("unreachable");
}

inline std::string format_ball(const FormalBall& b) {
    return format_point(b.center) + " @ " + format_rational(b.radius);
}

} // namespace schmidt
