#pragma once

// m-elementary walls, Shi partitions and cone types.
//
// A wall is m-elementary when at most m walls separate it from id.  For a
// positive root beta that count is the number of positive roots it strictly
// dominates, which obeys
//
//     dom(s.beta) = dom(beta) + [B(alpha_s, beta) <= -1]   when B(alpha_s, beta) < 0,
//
// so the m-elementary roots close up depth by depth from the simple roots.
// elementary_walls_by_wall_count() recomputes the same set from half-spaces
// of a finite ball and never looks at the bilinear form.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "automaton.hpp"
#include "ball.hpp"
#include "coxeter.hpp"
#include "weak_order.hpp"

namespace garside {

/// Sign vector over the walls of a SmallRootSet: true = far side from id.
using SignVector = std::vector<bool>;

/// The m-elementary walls with their reflection table.
class SmallRootSet {
public:
    static constexpr long kLeaves = -1;    // s.beta is not m-elementary
    static constexpr long kNegative = -2;  // beta = alpha_s

    std::size_t m() const { return m_; }
    std::size_t size() const { return roots_.size(); }
    const std::vector<Wall>& roots() const { return roots_; }
    Wall operator[](std::size_t i) const { return roots_[i]; }

    std::optional<std::size_t> index_of(Wall w) const {
        auto it = index_.find(w.root);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(Wall w) const { return index_.count(w.root) != 0; }

    /// Index of s.roots()[i] in the set, kLeaves, or kNegative.
    long reflect(Gen s, std::size_t i) const { return table_[i][s]; }

private:
    friend SmallRootSet elementary_walls(const CoxeterSystem&, std::size_t, std::size_t);

    std::size_t m_ = 0;
    std::vector<Wall> roots_;
    std::unordered_map<std::uint32_t, std::size_t> index_;
    std::vector<std::vector<long>> table_;
};

/// Walls with at most m walls separating them from id, built depth by depth.
/// `max_roots` guards against runaway growth; the set is finite in theory, so
/// tripping it signals a bug.
inline SmallRootSet elementary_walls(const CoxeterSystem& W, std::size_t m, std::size_t max_roots = 200000) {
    SmallRootSet out;
    out.m_ = m;
    for (std::size_t s = 0; s < W.rank(); ++s) {
        const Wall w = W.simple_wall(static_cast<Gen>(s));
        out.index_.emplace(w.root, out.roots_.size());
        out.roots_.push_back(w);
    }
    for (std::size_t i = 0; i < out.roots_.size(); ++i) {
        const Wall beta = out.roots_[i];
        for (std::size_t s = 0; s < W.rank(); ++s) {
            const Gen g = static_cast<Gen>(s);
            const Scalar& b = W.simple_form(g, beta);
            if (b.sign() >= 0) continue;  // s.beta is not deeper
            const Wall next{W.reflect(g, SignedRoot{beta.root, false}).root};
            if (out.index_.count(next.root)) continue;
            if (W.dominance_count(next) > static_cast<int>(m)) continue;
            out.index_.emplace(next.root, out.roots_.size());
            out.roots_.push_back(next);
            if (out.roots_.size() > max_roots)
                throw std::runtime_error("elementary_walls: root set exceeded guard; arithmetic is inconsistent");
        }
    }
    out.table_.assign(out.roots_.size(), std::vector<long>(W.rank(), SmallRootSet::kLeaves));
    for (std::size_t i = 0; i < out.roots_.size(); ++i)
        for (std::size_t s = 0; s < W.rank(); ++s) {
            const SignedRoot r = W.reflect(static_cast<Gen>(s), SignedRoot{out.roots_[i].root, false});
            if (r.negative) {
                out.table_[i][s] = SmallRootSet::kNegative;
                continue;
            }
            auto it = out.index_.find(r.root);
            if (it != out.index_.end()) out.table_[i][s] = static_cast<long>(it->second);
        }
    return out;
}

/// At most m walls separate g from the wall.
inline bool m_close(Wall wall, Element g, std::size_t m) {
    const CoxeterSystem& W = g.system();
    return W.dominance_count(W.translate_inverse(g, wall)) <= static_cast<int>(m);
}

struct WallCountOracle {
    std::size_t radius = 0;
    std::size_t window = 0;        // walls within this distance of id are decided
    std::vector<Wall> elementary;  // decided m-elementary walls, sorted by root id

    /// Every wall of `fast` is close enough to id to have been decided.
    bool covers(const CoxeterSystem& W, const SmallRootSet& fast) const {
        for (Wall w : fast.roots())
            if (static_cast<std::size_t>(W.depth(w)) > window + 1) return false;
        return true;
    }
};

/// m-elementary walls found by counting separating walls on a ball.
///
/// A wall V separates id from the wall U exactly when no vertex lies on the
/// id side of V and the far side of U.  Witnesses are searched in the ball of
/// `radius`.  The walls decided are those dual to an edge of the ball, or only
/// those within `window` of id when given.  A witness outside the ball would
/// be missed, so the answer can only err by dropping walls.
inline WallCountOracle elementary_walls_by_wall_count(const CoxeterSystem& W, std::size_t m, std::size_t radius,
                                                     std::optional<std::size_t> window_override = std::nullopt) {
    if (radius == 0) throw std::invalid_argument("wall-count oracle needs radius >= 1");
    CayleyBall ball(W, radius);
    const std::size_t window = window_override ? std::min(*window_override, radius - 1) : radius - 1;

    // Walls in the window, with a far endpoint of a dual edge nearest to id.
    std::vector<Wall> walls;
    std::unordered_map<std::uint32_t, std::size_t> windex;
    std::vector<Element> far_end;
    for (Element g : ball) {
        if (g.length() > window) break;
        for (std::size_t s = 0; s < W.rank(); ++s) {
            const Element h = W.right(g, static_cast<Gen>(s));
            if (h.length() < g.length()) continue;
            const Wall w = W.wall_of_edge(g, static_cast<Gen>(s));
            if (windex.emplace(w.root, walls.size()).second) {
                walls.push_back(w);
                far_end.push_back(h);
            }
        }
    }

    // far[v][k]: ball vertex v lies on the far side of walls[k].
    const std::size_t nw = walls.size();
    std::vector<std::vector<bool>> far(ball.size(), std::vector<bool>(nw));
    for (std::size_t v = 1; v < ball.size(); ++v) {
        const Element h = ball[v];
        const Word& w = h.word();
        const Element parent = W.normal_form(w.prefix(w.size() - 1));
        const std::size_t pv = *ball.index_of(parent);
        const Gen s = w.back();
        const Wall crossed = W.wall_of_edge(parent, s);
        for (std::size_t k = 0; k < nw; ++k) far[v][k] = far[pv][k] != (walls[k] == crossed);
    }

    WallCountOracle out{radius, window, {}};
    for (std::size_t k = 0; k < nw; ++k) {
        const std::size_t fv = *ball.index_of(far_end[k]);
        std::size_t count = 0;
        for (std::size_t j = 0; j < nw && count <= m; ++j) {
            if (j == k || !far[fv][j]) continue;  // must separate id from the far endpoint
            bool witness = false;
            for (std::size_t v = 0; v < ball.size() && !witness; ++v) witness = far[v][k] && !far[v][j];
            if (!witness) ++count;
        }
        if (count <= m) out.elementary.push_back(walls[k]);
    }
    std::sort(out.elementary.begin(), out.elementary.end());
    return out;
}

/// Which walls of the set separate g from id.
inline SignVector shi_sign_vector(const SmallRootSet& sigma, Element g) {
    const CoxeterSystem& W = g.system();
    SignVector v(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) v[i] = W.on_far_side(g, sigma[i]);
    return v;
}

/// Reduced-word automaton on m-elementary sign states.
///
/// After reading a reduced word for h the state is the set of m-elementary
/// walls separating id from h^-1, so the states are exactly the reachable
/// sign vectors.  Reading s is refused when alpha_s is already in the state.
struct CanonicalAutomaton {
    Automaton fsa;
    std::vector<SignVector> states;
    std::vector<Word> first_words;  // ShortLex-least word reaching each state
};

inline CanonicalAutomaton canonical_automaton(const CoxeterSystem& W, const SmallRootSet& sigma) {
    CanonicalAutomaton out;
    std::map<SignVector, std::size_t> index;
    out.states.push_back(SignVector(sigma.size(), false));
    out.first_words.push_back(Word{});
    index.emplace(out.states[0], 0);
    std::vector<std::size_t> simple_index(W.rank());
    for (std::size_t s = 0; s < W.rank(); ++s) simple_index[s] = *sigma.index_of(W.simple_wall(static_cast<Gen>(s)));

    for (std::size_t q = 0; q < out.states.size(); ++q) {
        for (std::size_t s = 0; s < W.rank(); ++s) {
            const SignVector& x = out.states[q];
            if (x[simple_index[s]]) continue;
            SignVector y(sigma.size(), false);
            y[simple_index[s]] = true;
            for (std::size_t i = 0; i < sigma.size(); ++i) {
                if (!x[i]) continue;
                const long j = sigma.reflect(static_cast<Gen>(s), i);
                if (j >= 0) y[static_cast<std::size_t>(j)] = true;
            }
            auto [it, fresh] = index.emplace(y, out.states.size());
            if (fresh) {
                Word w = out.first_words[q];
                w.push_back(static_cast<Gen>(s));
                out.states.push_back(std::move(y));
                out.first_words.push_back(std::move(w));
            }
            out.fsa.edges.push_back({q, it->second, {Word{static_cast<Gen>(s)}}});
        }
    }
    out.fsa.state_count = out.states.size();
    out.fsa.start = 0;
    out.fsa.accepting.assign(out.states.size(), true);
    for (const Word& w : out.first_words) out.fsa.state_names.push_back(W.format_word(w));
    normalize(out.fsa);
    return out;
}

inline CanonicalAutomaton canonical_automaton(const CoxeterSystem& W, std::size_t m) {
    return canonical_automaton(W, elementary_walls(W, m));
}

/// Gates of the m-Shi partition (the m-low elements), ShortLex order.
inline std::vector<Element> shi_gates(const CoxeterSystem& W, std::size_t m) {
    const CanonicalAutomaton ca = canonical_automaton(W, m);
    std::vector<Element> out;
    for (const Word& w : ca.first_words) out.push_back(W.inverse(W.normal_form(w)));
    std::sort(out.begin(), out.end());
    return out;
}

/// g is the smallest element of its m-Shi part: every wall crossed by
/// dropping a right descent is m-elementary.
inline bool is_m_low(Element g, std::size_t m) {
    const CoxeterSystem& W = g.system();
    for (Gen s : W.descents(g, Side::Right))
        if (W.dominance_count(W.wall_of_edge(g, s)) > static_cast<int>(m)) return false;
    return true;
}

/// Gate of the m-Shi part containing g.
inline Element shi_gate_of(Element g, std::size_t m) {
    const CoxeterSystem& W = g.system();
    for (bool moved = true; moved;) {
        moved = false;
        for (Gen s : W.descents(g, Side::Right)) {
            if (W.dominance_count(W.wall_of_edge(g, s)) > static_cast<int>(m)) {
                g = W.right(g, s);
                moved = true;
                break;
            }
        }
    }
    return g;
}

/// Cone types via the minimal reduced-word automaton.
class ConeTypes {
public:
    explicit ConeTypes(const CoxeterSystem& W) : sys_(&W) {
        const CanonicalAutomaton ca = canonical_automaton(W, 0);
        minimal_ = minimize(ca.fsa, W.rank());
        delta_ = transition_table(minimal_, W.rank());
        // Breadth-first words in generator order reach each state first by its
        // ShortLex-least word.
        std::vector<long> seen(minimal_.state_count, -1);
        std::deque<std::pair<std::size_t, Word>> queue{{minimal_.start, Word{}}};
        seen[minimal_.start] = 0;
        gate_words_.assign(minimal_.state_count, Word{});
        while (!queue.empty()) {
            auto [q, w] = queue.front();
            queue.pop_front();
            gate_words_[q] = w;
            for (std::size_t s = 0; s < W.rank(); ++s) {
                const long t = delta_[q][s];
                if (t < 0 || seen[static_cast<std::size_t>(t)] >= 0) continue;
                seen[static_cast<std::size_t>(t)] = 0;
                Word nw = w;
                nw.push_back(static_cast<Gen>(s));
                queue.emplace_back(static_cast<std::size_t>(t), std::move(nw));
            }
        }
        minimal_.state_names.clear();
        for (const Word& w : gate_words_) minimal_.state_names.push_back(W.format_word(w));
    }

    const Automaton& minimal_automaton() const { return minimal_; }
    std::size_t count() const { return minimal_.state_count; }

    /// Cone type of g^-1, as the state reached by reading g^-1.
    std::size_t id(Element g) const {
        std::size_t q = minimal_.start;
        for (Gen s : sys_->word(sys_->inverse(g))) q = static_cast<std::size_t>(delta_[q][s]);
        return q;
    }

    /// The set Gamma of cone-type gates, ShortLex order.  A part collects the
    /// g whose inverses share a state, so its gate is the inverse of the
    /// shortest word reaching that state.
    std::vector<Element> gates() const {
        std::vector<Element> out;
        for (const Word& w : gate_words_) out.push_back(sys_->inverse(sys_->normal_form(w)));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    const CoxeterSystem* sys_;
    Automaton minimal_;
    std::vector<std::vector<long>> delta_;
    std::vector<Word> gate_words_;
};

inline std::vector<Element> cone_type_gates(const CoxeterSystem& W) { return ConeTypes(W).gates(); }

/// Cone type of g^-1 cut down to a ball: {f : l(g) + l(f) = l(g^-1 f)}.
inline std::vector<Element> cone_type_fingerprint(Element g, std::size_t radius) {
    const CoxeterSystem& W = g.system();
    const Element gi = W.inverse(g);
    std::vector<Element> out;
    for (Element f : CayleyBall(W, radius))
        if (W.multiply(gi, f).length() == g.length() + f.length()) out.push_back(f);
    return out;
}

}  // namespace garside
