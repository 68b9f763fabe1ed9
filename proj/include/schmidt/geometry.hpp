#pragma once

// Constructive uniform-perfectness geometry: the shell witness
// B(x,rho) \ B(x,c*rho) != {} and the disjoint-ball picker that replaces the
// abstract existence statement with per-space searches whose postconditions
// are verified exactly before returning.

#include <schmidt/errors.hpp>
#include <schmidt/space.hpp>

#include <string>
#include <vector>

namespace schmidt {

namespace detail {

// First `count` ternary digits of a Cantor point, zero-padded.
inline std::string cantor_prefix(const CantorPoint& p, std::size_t count) {
    std::string d = p.digits.substr(0, count);
    d.resize(count, '0');
    return d;
}

inline char toggled(char digit) { return digit == '0' ? '2' : '0'; }

// First `count` digits of a binary sequence, then the flipped digit at
// position `count`; tail unchanged.
inline BinarySeqPoint binseq_flip(const BinarySeqPoint& p, std::size_t index) {
    std::string prefix;
    prefix.reserve(index + 1);
    for (std::size_t i = 0; i < index; ++i) prefix.push_back(p.digit(i));
    prefix.push_back(p.digit(index) == '0' ? '1' : '0');
    return BinarySeqPoint(std::move(prefix), p.tail);
}

} // namespace detail

// Returns p with c*rho < d(x,p) <= rho, exactly. Throws NoWitness when the
// search cannot realize the shell, which signals that the requested c is not
// supported at (x, rho); the declared per-space constants always succeed.
inline Point uniform_perfect_witness(const Space& space, const Point& x, const Rational& rho,
                                     const Rational& c) {
    if (rho <= 0) throw PreconditionViolated("witness: rho must be positive");
    if (c <= 0 || c >= 1) throw PreconditionViolated("witness: c must lie in (0,1)");
    auto good = [&](const Point& p) {
        const Rational d = distance(space, x, p);
        return c * rho < d && d <= rho;
    };
    switch (space.kind) {
    case SpaceKind::RealMax: {
        EuclideanPoint p = detail::as_euclidean(space, x);
        p.coords[0] += rho; // d(x,p) = rho, inside the shell for every c < 1
        return p;
    }
    case SpaceKind::CantorTernary: {
        const auto& cp = detail::as_cantor(x);
        // Toggling digit k (weight 3^-k) moves the value by something in
        // [3^-k, 2*3^-k]; scan a window of depths around the first k with
        // 2*3^-k <= rho, with a few trailing-2 refinements.
        unsigned k = 1;
        Rational w = Rational(1, 3);
        while (2 * w > rho && k < 64) {
            w /= 3;
            ++k;
        }
        const unsigned lo = k > 2 ? k - 2 : 1;
        for (unsigned j = lo; j <= k + 3; ++j) {
            std::string base = detail::cantor_prefix(cp, j);
            base.back() = detail::toggled(base.back());
            for (unsigned extra = 0; extra <= 4; ++extra) {
                Point candidate = CantorPoint(base + std::string(extra, '2'));
                if (good(candidate)) return candidate;
            }
        }
        break;
    }
    case SpaceKind::BinarySeq: {
        const auto& bp = detail::as_binseq(x);
        // Distances are powers of four; flipping index k realizes 4^-k.
        const unsigned k = binseq_cylinder_depth(rho);
        const unsigned lo = k > 1 ? k - 1 : 0;
        for (unsigned j = lo; j <= k + 3; ++j) {
            Point candidate = detail::binseq_flip(bp, j);
            if (good(candidate)) return candidate;
        }
        break;
    }
    }
    throw NoWitness("no point with " + format_rational(c * rho) + " < d <= " +
                    format_rational(rho) + " around " + format_point(x));
}

// A ball of radius exactly (c/5) * outer.radius, formally inside `outer` and
// strictly disjoint from `deleted`. Candidates are generated per space and
// every postcondition is re-checked exactly; NotFound signals a geometry bug
// or an invalid c.
inline FormalBall disjoint_ball_picker(const Space& space, const FormalBall& outer,
                                       const FormalBall& deleted, const Rational& c) {
    const Rational r = c / 5 * outer.radius;
    const Rational budget = outer.radius - r; // max center displacement
    auto admissible = [&](const Point& z) {
        FormalBall candidate(z, r);
        if (!formal_leq(space, candidate, outer)) return false;
        return distance(space, z, deleted.center) > deleted.radius + r;
    };
    std::vector<Point> candidates;
    switch (space.kind) {
    case SpaceKind::RealMax: {
        const auto& x = detail::as_euclidean(space, outer.center);
        for (const Rational& step : {budget, budget / 2, budget / 4}) {
            for (int axis = 0; axis < space.dim; ++axis) {
                for (int sign : {+1, -1}) {
                    EuclideanPoint z = x;
                    z.coords[axis] += sign * step;
                    candidates.push_back(z);
                }
            }
        }
        candidates.push_back(x);
        break;
    }
    case SpaceKind::CantorTernary: {
        const auto& x = detail::as_cantor(outer.center);
        // Depth-k cylinder around x sits inside the displacement budget;
        // enumerate its endpoints a few levels deeper.
        unsigned k = 0;
        Rational w = 1;
        while (w > budget && k < 64) {
            w /= 3;
            ++k;
        }
        const std::string prefix = detail::cantor_prefix(x, k);
        for (unsigned depth = 1; depth <= 6; ++depth) {
            for (unsigned mask = 0; mask < (1u << depth); ++mask) {
                std::string digits = prefix;
                for (unsigned i = 0; i < depth; ++i)
                    digits.push_back((mask >> (depth - 1 - i)) & 1 ? '2' : '0');
                candidates.push_back(CantorPoint(digits));
            }
        }
        break;
    }
    case SpaceKind::BinarySeq: {
        const auto& x = detail::as_binseq(outer.center);
        const unsigned m0 = binseq_cylinder_depth(budget);
        candidates.push_back(x);
        for (unsigned m = m0; m <= m0 + 8; ++m)
            candidates.push_back(detail::binseq_flip(x, m));
        break;
    }
    }
    for (const Point& z : candidates)
        if (admissible(z)) return FormalBall(z, r);
    throw NotFound("disjoint_ball_picker: no candidate inside " + format_ball(outer) +
                   " clears " + format_ball(deleted));
}

} // namespace schmidt
