#pragma once

// Right weak order: g <= h iff g lies on a geodesic from id to h.
//
// Meets and joins are computed by materializing lower intervals.  The one
// place that does something smarter is join_pair(), the upward search used
// by shadow validation and closure; it is cross-checked against the
// exhaustive join_search() in the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ball.hpp"
#include "coxeter.hpp"

namespace garside {

inline bool weak_leq(Element g, Element h) {
    const CoxeterSystem& W = g.system();
    if (g.length() > h.length()) return false;
    Element y = W.inverse(h);
    for (Gen c : g.word()) {
        Element z = W.right(y, c);
        if (z.length() > y.length()) return false;
        y = z;
    }
    return true;
}

/// Same relation, decided by walls: no wall separates g from both id and h.
inline bool weak_leq_by_walls(Element g, Element h) {
    const CoxeterSystem& W = g.system();
    for (Wall w : W.inversion_walls(g))
        if (!W.on_far_side(h, w)) return false;
    return true;
}

struct WeakOrderInterval {
    Element top;
    std::vector<Element> members;  // ShortLex order

    bool contains(Element g) const { return std::binary_search(members.begin(), members.end(), g); }
};

/// {x : x <= g}.
inline WeakOrderInterval lower_interval(Element g) {
    const CoxeterSystem& W = g.system();
    std::vector<Element> out{g};
    std::unordered_set<std::uint32_t> seen{g.id()};
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Element x = out[i];
        for (std::size_t s = 0; s < W.rank(); ++s) {
            const Element y = W.right(x, static_cast<Gen>(s));
            if (y.length() < x.length() && seen.insert(y.id()).second) out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return {g, std::move(out)};
}

namespace detail {

/// The unique element of `cands` above (or below) every other; throws if the
/// extremal element is not unique.
inline Element unique_extremum(std::span<const Element> cands, bool want_max, const char* what) {
    std::vector<Element> ext;
    for (Element c : cands) {
        bool extremal = true;
        for (Element d : cands) {
            if (c == d) continue;
            if (want_max ? weak_leq(c, d) : weak_leq(d, c)) {
                extremal = false;
                break;
            }
        }
        if (extremal) ext.push_back(c);
    }
    if (ext.size() != 1)
        throw std::logic_error(std::string(what) + ": extremal element is not unique (" +
                               std::to_string(ext.size()) + " candidates)");
    return ext.front();
}

}  // namespace detail

/// Greatest common lower bound of a nonempty set.
inline Element meet(std::span<const Element> A) {
    if (A.empty()) throw std::invalid_argument("meet of an empty set");
    std::vector<Element> common = lower_interval(A.front()).members;
    for (std::size_t i = 1; i < A.size(); ++i) {
        const auto other = lower_interval(A[i]);
        std::vector<Element> keep;
        for (Element x : common)
            if (other.contains(x)) keep.push_back(x);
        common = std::move(keep);
    }
    return detail::unique_extremum(common, true, "meet");
}

/// Least upper bound of A inside the lower interval of `bound`.
inline Element join_bounded(std::span<const Element> A, Element bound) {
    for (Element a : A)
        if (!weak_leq(a, bound))
            throw std::invalid_argument("join_bounded: " + bound.system().format(a) + " is not below the bound");
    std::vector<Element> ubs;
    for (Element x : lower_interval(bound).members) {
        bool ok = true;
        for (Element a : A)
            if (!weak_leq(a, x)) {
                ok = false;
                break;
            }
        if (ok) ubs.push_back(x);
    }
    return detail::unique_extremum(ubs, false, "join");
}

struct JoinSearch {
    std::optional<Element> join;  // empty: no upper bound within the cutoff
    std::size_t cutoff = 0;
    bool found() const { return join.has_value(); }
};

/// Join of A looked up exhaustively in the ball of the given radius.
/// Absence means "no common upper bound within the cutoff", nothing more.
inline JoinSearch join_search(const CoxeterSystem& W, std::span<const Element> A, std::size_t cutoff) {
    CayleyBall ball(W, cutoff);
    for (Element x : ball) {  // ShortLex: the first upper bound is the shortest
        bool ok = true;
        for (Element a : A)
            if (!weak_leq(a, x)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        // The join lies below every upper bound, so the shortest upper bound is it.
        return {x, cutoff};
    }
    return {std::nullopt, cutoff};
}

enum class JoinVerdict { Exists, NoUpperBound, NotWithinCutoff };

struct PairJoin {
    JoinVerdict verdict = JoinVerdict::NotWithinCutoff;
    std::optional<Element> join;
};

/// Join of two elements by an upward breadth-first search from `a`.
///
/// Two positive roots with B(beta, gamma) <= -1 have disjoint far
/// half-spaces, so such a pair of walls among the inversion walls of a and b
/// rules out any upper bound.  The same test prunes the search: every element
/// below the join has its inversion walls compatible with both a and b.
inline PairJoin join_pair(Element a, Element b, std::size_t cutoff) {
    const CoxeterSystem& W = a.system();
    if (weak_leq(a, b)) return {JoinVerdict::Exists, b};
    if (weak_leq(b, a)) return {JoinVerdict::Exists, a};
    const std::vector<Wall> wa = W.inversion_walls(a);
    const std::vector<Wall> wb = W.inversion_walls(b);
    std::vector<Wall> all = wa;
    all.insert(all.end(), wb.begin(), wb.end());
    auto opposed = [&](Wall x, Wall y) { return W.walls_opposed(x, y); };
    for (Wall x : wa)
        for (Wall y : wb)
            if (opposed(x, y)) return {JoinVerdict::NoUpperBound, std::nullopt};

    std::vector<Element> level{a};
    for (std::size_t len = a.length(); len <= cutoff; ++len) {
        for (Element x : level)
            if (weak_leq(b, x)) return {JoinVerdict::Exists, x};
        if (len == cutoff) break;
        std::vector<Element> next;
        std::unordered_set<std::uint32_t> seen;
        for (Element x : level)
            for (std::size_t s = 0; s < W.rank(); ++s) {
                const Element y = W.right(x, static_cast<Gen>(s));
                if (y.length() < x.length() || seen.count(y.id())) continue;
                const Wall crossed = W.wall_of_edge(x, static_cast<Gen>(s));
                bool compatible = true;
                for (Wall z : all)
                    if (opposed(crossed, z)) {
                        compatible = false;
                        break;
                    }
                if (!compatible) continue;
                seen.insert(y.id());
                next.push_back(y);
            }
        if (next.empty()) return {JoinVerdict::NoUpperBound, std::nullopt};
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return {JoinVerdict::NotWithinCutoff, std::nullopt};
}

/// Generators occurring in g, as a bit mask (the same for every reduced word).
inline std::uint32_t support(Element g) {
    std::uint32_t mask = 0;
    for (Gen c : g.word()) mask |= 1u << c;
    return mask;
}

/// W_J is finite iff the form restricted to J is positive definite.
inline bool parabolic_is_finite(const CoxeterSystem& W, std::uint32_t mask) {
    std::vector<std::size_t> J;
    for (std::size_t s = 0; s < W.rank(); ++s)
        if (mask >> s & 1u) J.push_back(s);
    const std::size_t n = J.size();
    std::vector<double> a(n * n), l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int m = W.matrix().label(J[i], J[j]);
            a[i * n + j] = i == j ? 1.0 : m == 0 ? -1.0 : -std::cos(std::numbers::pi / m);
        }
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (d < 1e-9) return false;
        l[j * n + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = v / l[j * n + j];
        }
    }
    return true;
}

/// Length of the longest element of the parabolic subgroup on `mask`, or
/// nothing if the subgroup is infinite or has more than `limit` elements.
inline std::optional<std::size_t> parabolic_longest_length(const CoxeterSystem& W, std::uint32_t mask,
                                                           std::size_t limit = 20000) {
    if (!parabolic_is_finite(W, mask)) return std::nullopt;
    std::vector<Element> level{W.identity()};
    std::unordered_set<std::uint32_t> seen{W.identity().id()};
    std::size_t len = 0;
    for (;;) {
        std::vector<Element> next;
        for (Element x : level)
            for (std::size_t s = 0; s < W.rank(); ++s) {
                if (!(mask >> s & 1u)) continue;
                const Element y = W.right(x, static_cast<Gen>(s));
                if (y.length() > x.length() && seen.insert(y.id()).second) next.push_back(y);
            }
        if (next.empty()) return len;
        if (seen.size() > limit) return std::nullopt;
        level = std::move(next);
        ++len;
    }
}

}  // namespace garside
