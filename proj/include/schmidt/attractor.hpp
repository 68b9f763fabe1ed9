#pragma once

// The sign-series attractor S_rho = { x0 + sum_m eps_m (1-beta) beta^m rho v }
// and exact finite-depth bounds on dist(q, S_rho). Enumerating the 2^M sign
// prefixes leaves per-branch tails of radius beta^M * rho, so
//   lower = max(0, min_p d(q, c_p) - tail)    <= dist(q, S_rho)
//   upper = min_p min(d(q, c_p +- tail*v))    >= dist(q, S_rho)
// with both endpoints realized by actual attractor points. lower > 0
// certifies q outside S_rho.

#include <schmidt/errors.hpp>
#include <schmidt/space.hpp>

#include <vector>

namespace schmidt {

inline Rational max_norm_distance(const EuclideanPoint& a, const EuclideanPoint& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("max_norm_distance: dimension mismatch");
    Rational best = 0;
    for (int i = 0; i < a.dim(); ++i)
        best = rational_max(best, rational_abs(a.coords[i] - b.coords[i]));
    return best;
}

struct AttractorSpec {
    EuclideanPoint anchor;
    std::vector<Rational> direction; // unit vector in the max norm
    Rational beta;                   // contraction ratio, in (0,1)
    Rational rho;                    // scale

    AttractorSpec(EuclideanPoint x0, std::vector<Rational> v, Rational b, Rational r)
        : anchor(std::move(x0)), direction(std::move(v)), beta(std::move(b)),
          rho(std::move(r)) {
        if (static_cast<int>(direction.size()) != anchor.dim())
            throw DimensionMismatch("attractor direction dimension mismatch");
        Rational norm = 0;
        for (const Rational& c : direction) norm = rational_max(norm, rational_abs(c));
        if (norm != 1) throw PreconditionViolated("direction must be a max-norm unit vector");
        if (beta <= 0 || beta >= 1) throw PreconditionViolated("beta must lie in (0,1)");
        if (rho <= 0) throw PreconditionViolated("rho must be positive");
    }

    EuclideanPoint translate(const EuclideanPoint& base, const Rational& amount) const {
        EuclideanPoint out = base;
        for (int i = 0; i < base.dim(); ++i) out.coords[i] += amount * direction[i];
        return out;
    }

    // Center after the sign prefix eps_0..eps_{m-1} (+1/-1 entries).
    EuclideanPoint prefix_center(const std::vector<int>& signs) const {
        Rational offset = 0, weight = (1 - beta) * rho;
        for (int s : signs) {
            offset += s * weight;
            weight *= beta;
        }
        return translate(anchor, offset);
    }
};

struct DistanceBounds {
    Rational lower;
    Rational upper;
};

// Exact bounds on dist(q, S_rho) from the depth-M cover. Desk bound M <= 20.
inline DistanceBounds attractor_distance_bounds(const AttractorSpec& spec,
                                                const EuclideanPoint& q, unsigned depth) {
    if (depth > 24) throw BudgetExceeded("attractor depth beyond the 2^M desk bound");
    const Rational tail = pow_rational(spec.beta, depth) * spec.rho;
    bool first = true;
    Rational min_center_dist = 0, upper = 0;
    std::vector<Rational> offsets{Rational(0)};
    Rational weight = (1 - spec.beta) * spec.rho;
    for (unsigned m = 0; m < depth; ++m) {
        std::vector<Rational> next;
        next.reserve(offsets.size() * 2);
        for (const Rational& off : offsets) {
            next.push_back(off + weight);
            next.push_back(off - weight);
        }
        offsets = std::move(next);
        weight *= spec.beta;
    }
    for (const Rational& off : offsets) {
        const EuclideanPoint center = spec.translate(spec.anchor, off);
        const Rational d = max_norm_distance(q, center);
        const Rational plus = max_norm_distance(q, spec.translate(center, tail));
        const Rational minus = max_norm_distance(q, spec.translate(center, -tail));
        const Rational endpoint = rational_min(plus, minus);
        if (first) {
            min_center_dist = d;
            upper = endpoint;
            first = false;
        } else {
            min_center_dist = rational_min(min_center_dist, d);
            upper = rational_min(upper, endpoint);
        }
    }
    Rational lower = min_center_dist - tail;
    if (lower < 0) lower = 0;
    return DistanceBounds{std::move(lower), std::move(upper)};
}

// Line version (anchor 0, direction +1): the 2^M prefix offsets, used by the
// measure cover.
inline std::vector<Rational> attractor_offsets_line(const Rational& beta, const Rational& rho,
                                                    unsigned depth) {
    if (depth > 24) throw BudgetExceeded("attractor depth beyond the 2^M desk bound");
    std::vector<Rational> offsets{Rational(0)};
    Rational weight = (1 - beta) * rho;
    for (unsigned m = 0; m < depth; ++m) {
        std::vector<Rational> next;
        next.reserve(offsets.size() * 2);
        for (const Rational& off : offsets) {
            next.push_back(off + weight);
            next.push_back(off - weight);
        }
        offsets = std::move(next);
        weight *= beta;
    }
    return offsets;
}

} // namespace schmidt
