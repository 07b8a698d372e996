#pragma once

// Voracious projection nu_B(g) = g * pi_B(g^-1), the language it generates,
// and the automaton A_B recognizing that language.
//
// op_voracious_projection() is the wall-based projection p(g): drop the walls
// adjacent to g that separate it from id, and take the largest element below g
// on the id side of all of them.  For B = L it must agree with nu_B.

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <vector>

#include "automaton.hpp"
#include "ball.hpp"
#include "coxeter.hpp"
#include "shadow.hpp"
#include "weak_order.hpp"

namespace garside {

inline Element voracious_projection(const GarsideShadow& B, Element g) {
    const CoxeterSystem& W = g.system();
    return W.multiply(g, B.project(W.inverse(g)));
}

/// p(g), computed from walls over the lower interval of g.
inline Element op_voracious_projection(Element g) {
    const CoxeterSystem& W = g.system();
    std::vector<Wall> near;  // walls separating g from id, with nothing between them and g
    for (Wall w : W.inversion_walls(g))
        if (W.dominance_count(W.translate_inverse(g, w)) == 0) near.push_back(w);
    std::vector<Element> P;
    for (Element p : lower_interval(g).members) {
        bool keep = true;
        for (Wall w : near)
            if (W.on_far_side(p, w)) {
                keep = false;
                break;
            }
        if (keep) P.push_back(p);
    }
    return detail::unique_extremum(P, true, "p(g)");
}

/// g, nu(g), nu^2(g), ..., id.
struct VoraciousChain {
    Element g;
    std::vector<Element> chain;
};

inline VoraciousChain voracious_chain(const GarsideShadow& B, Element g) {
    VoraciousChain c{g, {g}};
    while (!c.chain.back().is_identity()) {
        const Element next = voracious_projection(B, c.chain.back());
        if (next.length() >= c.chain.back().length())
            throw std::logic_error("voracious projection did not shorten " + g.system().format(c.chain.back()));
        c.chain.push_back(next);
    }
    return c;
}

/// All reduced words of g, ShortLex order.
inline std::vector<Word> reduced_words(Element g) {
    const CoxeterSystem& W = g.system();
    if (g.is_identity()) return {Word{}};
    std::vector<Word> out;
    for (Gen s : W.descents(g, Side::Right))
        for (Word w : reduced_words(W.right(g, s))) {
            w.push_back(s);
            out.push_back(std::move(w));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Memoized L_g for one shadow.
class VoraciousLanguage {
public:
    explicit VoraciousLanguage(const GarsideShadow& B) : B_(&B) {}

    const GarsideShadow& shadow() const { return *B_; }

    Element nu(Element g) const {
        {
            std::lock_guard lock(mu_);
            auto it = nu_.find(g.id());
            if (it != nu_.end()) return B_->system().element_by_id(it->second);
        }
        const Element r = voracious_projection(*B_, g);
        std::lock_guard lock(mu_);
        nu_.emplace(g.id(), r.id());
        return r;
    }

    /// L_id = {eps}; L_g = L_nu(g) . reduced words of nu(g)^-1 g.
    const std::vector<Word>& words(Element g) const {
        {
            std::lock_guard lock(mu_);
            auto it = words_.find(g.id());
            if (it != words_.end()) return it->second;
        }
        std::vector<Word> out;
        if (g.is_identity()) {
            out.push_back(Word{});
        } else {
            const CoxeterSystem& W = g.system();
            const Element n = nu(g);
            const std::vector<Word> tails = reduced_words(W.multiply(W.inverse(n), g));
            for (const Word& u : words(n))
                for (const Word& v : tails) out.push_back(u + v);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
        std::lock_guard lock(mu_);
        return words_.emplace(g.id(), std::move(out)).first->second;
    }

private:
    const GarsideShadow* B_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint32_t, std::uint32_t> nu_;
    mutable std::unordered_map<std::uint32_t, std::vector<Word>> words_;
};

inline std::vector<Word> language_of(const GarsideShadow& B, Element g) { return VoraciousLanguage(B).words(g); }

/// V_B restricted to words of length at most max_len, grouped by element.
struct LanguageSlice {
    std::size_t max_len = 0;
    std::vector<std::pair<Element, std::vector<Word>>> groups;  // ShortLex order of elements

    /// Every word of the slice, ShortLex order.
    std::vector<Word> words() const {
        std::vector<Word> out;
        for (const auto& [g, ws] : groups) out.insert(out.end(), ws.begin(), ws.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    std::size_t word_count() const {
        std::size_t n = 0;
        for (const auto& [g, ws] : groups) n += ws.size();
        return n;
    }
};

/// Words of V_B represent g and are reduced, so the slice is L_g over the ball.
inline LanguageSlice enumerate_language(const VoraciousLanguage& lang, std::size_t max_len) {
    LanguageSlice out{max_len, {}};
    for (Element g : CayleyBall(lang.shadow().system(), max_len)) out.groups.emplace_back(g, lang.words(g));
    return out;
}

inline LanguageSlice enumerate_language(const GarsideShadow& B, std::size_t max_len) {
    return enumerate_language(VoraciousLanguage(B), max_len);
}

/// A_B: states are the elements of B (ShortLex order, so id is state 0), all
/// accepting; an edge b -> w for w != id whenever pi_B(w b) = w, labelled by
/// the reduced words of w^-1.
inline Automaton build_voracious_fsa(const GarsideShadow& B) {
    const CoxeterSystem& W = B.system();
    const auto& elems = B.elements();
    Automaton A;
    A.state_count = elems.size();
    A.start = 0;
    A.accepting.assign(elems.size(), true);
    for (Element b : elems) A.state_names.push_back(W.format(b));
    for (std::size_t j = 0; j < elems.size(); ++j) {
        const Element w = elems[j];
        if (w.is_identity()) continue;
        const std::vector<Word> labels = reduced_words(W.inverse(w));
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (B.project(W.multiply(w, elems[i])) == w) A.edges.push_back({i, j, labels});
    }
    normalize(A);
    return A;
}

struct RegularityReport {
    bool equal = true;
    bool states_match = true;
    std::size_t max_len = 0;
    std::size_t accepted_words = 0;
    std::size_t language_words = 0;
    std::vector<Word> only_automaton;  // accepted but outside V_B
    std::vector<Word> only_language;   // in V_B but rejected
    std::optional<Word> state_witness; // accepted at a state other than pi_B(g^-1) alone

    bool passed() const { return equal && states_match; }
};

/// All words of length <= max_len accepted by A, with their accept states.
inline std::map<Word, std::vector<std::size_t>> accepted_words(const Automaton& A, std::size_t alphabet,
                                                              std::size_t max_len) {
    LetterExpansion x(A);
    std::map<Word, std::vector<std::size_t>> out;
    struct Frame {
        Word w;
        std::vector<std::size_t> states;
    };
    std::vector<Frame> stack{{Word{}, {x.start()}}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const AcceptResult r = x.accept_states(f.states);
        if (r.accepted) out.emplace(f.w, r.states);
        if (f.w.size() == max_len) continue;
        for (std::size_t c = 0; c < alphabet; ++c) {
            auto next = x.step(f.states, static_cast<Gen>(c));
            if (next.empty()) continue;
            Word w = f.w;
            w.push_back(static_cast<Gen>(c));
            stack.push_back({std::move(w), std::move(next)});
        }
    }
    return out;
}

/// Words accepted by A_B versus the enumerated slice of V_B, plus the accept
/// state of each word against pi_B(g^-1).
inline RegularityReport cross_validate_regularity(const VoraciousLanguage& lang, const Automaton& A,
                                                  std::size_t max_len) {
    const GarsideShadow& B = lang.shadow();
    const CoxeterSystem& W = B.system();
    RegularityReport r;
    r.max_len = max_len;
    const auto accepted = accepted_words(A, W.rank(), max_len);
    const std::vector<Word> lang_words = enumerate_language(lang, max_len).words();
    r.accepted_words = accepted.size();
    r.language_words = lang_words.size();
    std::set<Word> in_lang(lang_words.begin(), lang_words.end());
    for (const auto& [w, states] : accepted) {
        if (!in_lang.count(w)) {
            r.equal = false;
            r.only_automaton.push_back(w);
            continue;
        }
        const Element g = W.normal_form(w);
        const Element expect = B.project(W.inverse(g));
        const auto& elems = B.elements();
        const std::size_t q = static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), expect) - elems.begin());
        if (states.size() != 1 || states[0] != q) {
            r.states_match = false;
            if (!r.state_witness) r.state_witness = w;
        }
    }
    for (const Word& w : lang_words)
        if (!accepted.count(w)) {
            r.equal = false;
            r.only_language.push_back(w);
        }
    return r;
}

inline RegularityReport cross_validate_regularity(const GarsideShadow& B, std::size_t max_len) {
    VoraciousLanguage lang(B);
    return cross_validate_regularity(lang, build_voracious_fsa(B), max_len);
}

}  // namespace garside
