#pragma once

// Finite state automata whose edges carry finite sets of words.
//
// Acceptance works on the letter expansion: each word label becomes a chain
// of fresh intermediate states, and the resulting nondeterministic automaton
// is run by subset tracking.  accepts_by_decomposition() is the direct
// dynamic program over word-labelled edges and serves as its cross-check.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "word.hpp"

namespace garside {

struct Automaton {
    struct Edge {
        std::size_t from = 0;
        std::size_t to = 0;
        std::vector<Word> labels;  // ShortLex order, nonempty words
    };

    std::size_t state_count = 0;
    std::size_t start = 0;
    std::vector<bool> accepting;
    std::vector<Edge> edges;
    std::vector<std::string> state_names;  // optional, used by the exporters

    std::size_t edge_count() const { return edges.size(); }
};

/// Sorts edges by (from, to) and labels by ShortLex; merges parallel edges.
inline void normalize(Automaton& A) {
    std::map<std::pair<std::size_t, std::size_t>, std::set<Word>> merged;
    for (auto& e : A.edges) {
        for (auto& w : e.labels) {
            if (w.empty()) throw std::invalid_argument("automaton edge label must be a nonempty word");
            merged[{e.from, e.to}].insert(w);
        }
    }
    A.edges.clear();
    for (auto& [key, labels] : merged)
        A.edges.push_back({key.first, key.second, std::vector<Word>(labels.begin(), labels.end())});
}

struct AcceptResult {
    bool accepted = false;
    std::vector<std::size_t> states;  // accepting states reached, ascending
};

/// Letter expansion of a word-labelled automaton.
class LetterExpansion {
public:
    explicit LetterExpansion(const Automaton& A) : origin_(A.state_count) {
        for (std::size_t i = 0; i < A.state_count; ++i) origin_[i] = i;
        delta_.resize(A.state_count);
        for (const auto& e : A.edges)
            for (const Word& w : e.labels) {
                if (w.empty()) throw std::invalid_argument("automaton edge label must be a nonempty word");
                std::size_t cur = e.from;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    std::size_t nxt;
                    if (i + 1 == w.size()) {
                        nxt = e.to;
                    } else {
                        nxt = origin_.size();
                        origin_.push_back(kIntermediate);
                        delta_.emplace_back();
                    }
                    delta_[cur].emplace_back(w[i], nxt);
                    cur = nxt;
                }
            }
        start_ = A.start;
        accepting_ = A.accepting;
    }

    std::size_t size() const { return origin_.size(); }

    /// Set of expanded states after reading v from the start.
    std::vector<std::size_t> run(const Word& v) const {
        std::vector<std::size_t> cur{start_};
        for (Gen c : v) cur = step(cur, c);
        return cur;
    }

    std::vector<std::size_t> step(const std::vector<std::size_t>& cur, Gen c) const {
        std::vector<std::size_t> next;
        for (std::size_t q : cur)
            for (auto [letter, to] : delta_[q])
                if (letter == c) next.push_back(to);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        return next;
    }

    AcceptResult accept_states(const std::vector<std::size_t>& cur) const {
        AcceptResult r;
        for (std::size_t q : cur)
            if (origin_[q] != kIntermediate && accepting_[origin_[q]]) r.states.push_back(origin_[q]);
        r.accepted = !r.states.empty();
        return r;
    }

    std::size_t start() const { return start_; }

private:
    static constexpr std::size_t kIntermediate = static_cast<std::size_t>(-1);
    std::vector<std::size_t> origin_;
    std::vector<std::vector<std::pair<Gen, std::size_t>>> delta_;
    std::size_t start_ = 0;
    std::vector<bool> accepting_;
};

inline AcceptResult fsa_accepts(const Automaton& A, const Word& v) {
    LetterExpansion x(A);
    return x.accept_states(x.run(v));
}

/// Acceptance by explicit decomposition v = v_0 ... v_m along an edge path.
inline AcceptResult accepts_by_decomposition(const Automaton& A, const Word& v) {
    // reach[i] = states reachable after consuming the first i letters
    std::vector<std::set<std::size_t>> reach(v.size() + 1);
    reach[0].insert(A.start);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (reach[i].empty()) continue;
        for (const auto& e : A.edges) {
            if (!reach[i].count(e.from)) continue;
            for (const Word& w : e.labels) {
                if (i + w.size() > v.size()) continue;
                if (std::equal(w.begin(), w.end(), v.begin() + static_cast<std::ptrdiff_t>(i)))
                    reach[i + w.size()].insert(e.to);
            }
        }
    }
    AcceptResult r;
    for (std::size_t q : reach[v.size()])
        if (A.accepting[q]) r.states.push_back(q);
    r.accepted = !r.states.empty();
    return r;
}

/// Deterministic single-letter transition table; -1 marks a missing move.
inline std::vector<std::vector<long>> transition_table(const Automaton& A, std::size_t alphabet) {
    std::vector<std::vector<long>> delta(A.state_count, std::vector<long>(alphabet, -1));
    for (const auto& e : A.edges)
        for (const Word& w : e.labels) {
            if (w.size() != 1) throw std::invalid_argument("transition_table needs single-letter labels");
            long& slot = delta[e.from][w[0]];
            if (slot >= 0 && slot != static_cast<long>(e.to))
                throw std::invalid_argument("transition_table needs a deterministic automaton");
            slot = static_cast<long>(e.to);
        }
    return delta;
}

/// Minimal deterministic automaton for the same language.
///
/// Moore partition refinement on the completion by a sink state; the sink
/// class and unreachable classes are dropped, and the surviving states are
/// numbered in breadth-first order from the start.
inline Automaton minimize(const Automaton& A, std::size_t alphabet) {
    auto delta = transition_table(A, alphabet);
    const std::size_t n = A.state_count;
    const std::size_t sink = n;
    auto next = [&](std::size_t q, std::size_t c) -> std::size_t {
        if (q == sink || delta[q][c] < 0) return sink;
        return static_cast<std::size_t>(delta[q][c]);
    };
    std::vector<std::size_t> cls(n + 1);
    for (std::size_t q = 0; q < n; ++q) cls[q] = A.accepting[q] ? 1 : 0;
    cls[sink] = 0;
    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig;
        std::vector<std::size_t> ncls(n + 1);
        for (std::size_t q = 0; q <= n; ++q) {
            std::vector<std::size_t> key{cls[q]};
            for (std::size_t c = 0; c < alphabet; ++c) key.push_back(cls[next(q, c)]);
            auto [it, fresh] = sig.emplace(std::move(key), sig.size());
            ncls[q] = it->second;
        }
        const std::size_t count = sig.size();
        cls = std::move(ncls);
        if (count == classes) break;
        classes = count;
    }

    // Live classes: some accepting state is reachable.
    std::vector<std::vector<std::size_t>> rev(classes);
    std::vector<bool> accepting_class(classes, false);
    for (std::size_t q = 0; q <= n; ++q) {
        if (q < n && A.accepting[q]) accepting_class[cls[q]] = true;
        for (std::size_t c = 0; c < alphabet; ++c) rev[cls[next(q, c)]].push_back(cls[q]);
    }
    std::vector<bool> live(accepting_class);
    std::deque<std::size_t> work;
    for (std::size_t k = 0; k < classes; ++k)
        if (live[k]) work.push_back(k);
    while (!work.empty()) {
        const std::size_t k = work.front();
        work.pop_front();
        for (std::size_t p : rev[k])
            if (!live[p]) {
                live[p] = true;
                work.push_back(p);
            }
    }

    std::vector<long> number(classes, -1);
    std::vector<std::size_t> rep(classes, sink);
    for (std::size_t q = 0; q <= n; ++q)
        if (rep[cls[q]] == sink) rep[cls[q]] = q;
    Automaton out;
    std::vector<std::size_t> order;
    if (live[cls[A.start]]) {
        number[cls[A.start]] = 0;
        order.push_back(cls[A.start]);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t k = order[i];
        for (std::size_t c = 0; c < alphabet; ++c) {
            const std::size_t t = cls[next(rep[k], c)];
            if (!live[t]) continue;
            if (number[t] < 0) {
                number[t] = static_cast<long>(order.size());
                order.push_back(t);
            }
            out.edges.push_back({i, static_cast<std::size_t>(number[t]), {Word{static_cast<Gen>(c)}}});
        }
    }
    out.state_count = order.size();
    out.start = 0;
    out.accepting.assign(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) out.accepting[i] = accepting_class[order[i]];
    normalize(out);
    return out;
}

// ---- export -------------------------------------------------------------

namespace detail {

inline std::string state_label(const Automaton& A, std::size_t q) {
    if (q < A.state_names.size() && !A.state_names[q].empty()) return A.state_names[q];
    return std::to_string(q);
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

/// Graphviz rendering.  Node and edge order follow state and edge order.
inline std::string to_dot(const Automaton& A, const CoxeterSystem& W, const std::string& name = "automaton") {
    std::ostringstream os;
    os << "digraph \"" << detail::dot_escape(name) << "\" {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    os << "  __start [shape=point];\n";
    for (std::size_t q = 0; q < A.state_count; ++q) {
        os << "  q" << q << " [label=\"" << detail::dot_escape(detail::state_label(A, q)) << "\"";
        if (A.accepting[q]) os << ", shape=doublecircle";
        os << "];\n";
    }
    os << "  __start -> q" << A.start << ";\n";
    for (const auto& e : A.edges) {
        std::string label;
        for (std::size_t i = 0; i < e.labels.size(); ++i) {
            if (i) label += ", ";
            label += W.format_word(e.labels[i]);
        }
        os << "  q" << e.from << " -> q" << e.to << " [label=\"" << detail::dot_escape(label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

/// Line-oriented dump:
///   automaton v1
///   states N
///   start Q
///   accept Q1 Q2 ...
///   state Q NAME          (one per state)
///   edge FROM TO W1,W2,...  (one per edge)
inline std::string to_text(const Automaton& A, const CoxeterSystem& W) {
    std::ostringstream os;
    os << "automaton v1\n";
    os << "states " << A.state_count << "\n";
    os << "start " << A.start << "\n";
    os << "accept";
    for (std::size_t q = 0; q < A.state_count; ++q)
        if (A.accepting[q]) os << ' ' << q;
    os << "\n";
    for (std::size_t q = 0; q < A.state_count; ++q) os << "state " << q << ' ' << detail::state_label(A, q) << "\n";
    for (const auto& e : A.edges) {
        os << "edge " << e.from << ' ' << e.to << ' ';
        for (std::size_t i = 0; i < e.labels.size(); ++i) {
            if (i) os << ',';
            os << W.format_word(e.labels[i]);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace garside
