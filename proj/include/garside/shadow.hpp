#pragma once

// Garside shadows: finite sets containing S, closed under suffixes and under
// joins that exist.  Every shadow B induces the projection pi_B(g), the
// largest element of B below g.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ball.hpp"
#include "coxeter.hpp"
#include "root_automata.hpp"
#include "weak_order.hpp"

namespace garside {

enum class Provenance { Low, MLow, Gamma, Closure, Explicit };

/// How a shadow was produced.  `m` only matters for MLow.
struct ShadowKind {
    Provenance provenance = Provenance::Explicit;
    std::size_t m = 0;

    static ShadowKind low() { return {Provenance::Low, 0}; }
    static ShadowKind mlow(std::size_t m) { return {Provenance::MLow, m}; }
    static ShadowKind gamma() { return {Provenance::Gamma, 0}; }
    static ShadowKind closure() { return {Provenance::Closure, 0}; }
    static ShadowKind explicit_set() { return {Provenance::Explicit, 0}; }

    friend bool operator==(const ShadowKind&, const ShadowKind&) = default;
};

inline std::string to_string(const ShadowKind& k) {
    switch (k.provenance) {
        case Provenance::Low: return "low";
        case Provenance::MLow: return "mlow=" + std::to_string(k.m);
        case Provenance::Gamma: return "gamma";
        case Provenance::Closure: return "closure";
        case Provenance::Explicit: return "explicit";
    }
    return "explicit";
}

/// Parses "low", "mlow=M", "gamma", "closure", "explicit".
inline ShadowKind parse_shadow_kind(const std::string& text) {
    if (text == "low") return ShadowKind::low();
    if (text == "gamma") return ShadowKind::gamma();
    if (text == "closure") return ShadowKind::closure();
    if (text == "explicit") return ShadowKind::explicit_set();
    if (text.rfind("mlow=", 0) == 0) {
        const std::string num = text.substr(5);
        if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos && num.size() < 6)
            return ShadowKind::mlow(std::stoul(num));
    }
    throw std::invalid_argument("unknown shadow kind '" + text + "' (expected low, mlow=M, gamma, closure)");
}

// ---- validation -----------------------------------------------------------

struct ShadowValidation {
    enum class Problem { None, MissingGenerator, MissingSuffix, MissingJoin };

    Problem problem = Problem::None;
    std::vector<Element> witness;  // generator | (member, suffix) | (a, b, join)
    // Pairs with no upper bound inside the search radius.  Their joins are
    // presumed not to exist.
    std::size_t presumed_pairs = 0;
    std::optional<std::pair<Element, Element>> presumed_example;
    std::size_t join_radius = 0;

    bool valid() const { return problem == Problem::None; }
    std::string describe(const CoxeterSystem& W) const;
};

inline std::string ShadowValidation::describe(const CoxeterSystem& W) const {
    std::ostringstream os;
    switch (problem) {
        case Problem::None:
            os << "valid";
            if (presumed_pairs)
                os << " (" << presumed_pairs << " pairs without an upper bound within radius " << join_radius
                   << ", joins presumed nonexistent)";
            break;
        case Problem::MissingGenerator: os << "generator " << W.format(witness[0]) << " missing"; break;
        case Problem::MissingSuffix:
            os << "suffix " << W.format(witness[1]) << " of " << W.format(witness[0]) << " missing";
            break;
        case Problem::MissingJoin:
            os << "join " << W.format(witness[2]) << " of " << W.format(witness[0]) << " and " << W.format(witness[1])
               << " missing";
            break;
    }
    return os.str();
}

/// Checks S, suffix closure and pairwise join closure.
///
/// Suffix closure follows from closure under removing a left descent.  A
/// join of a and b lies in the parabolic subgroup on their joint support, so
/// when that subgroup is finite its longest element bounds the search.
/// Otherwise joins are searched within radius 2 * max length, and pairs
/// still undecided there are reported as presumed, never as violations.
inline ShadowValidation validate_shadow(const CoxeterSystem& W, const std::vector<Element>& set) {
    ShadowValidation out;
    std::unordered_set<std::uint32_t> ids;
    std::size_t maxlen = 0;
    for (Element g : set) {
        ids.insert(g.id());
        maxlen = std::max(maxlen, g.length());
    }
    for (std::size_t s = 0; s < W.rank(); ++s) {
        const Element g = W.generator(static_cast<Gen>(s));
        if (!ids.count(g.id())) {
            out.problem = ShadowValidation::Problem::MissingGenerator;
            out.witness = {g};
            return out;
        }
    }
    std::vector<Element> sorted(set);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Element b : sorted)
        for (Gen s : W.descents(b, Side::Left)) {
            const Element w = W.left(s, b);
            if (!ids.count(w.id())) {
                out.problem = ShadowValidation::Problem::MissingSuffix;
                out.witness = {b, w};
                return out;
            }
        }
    out.join_radius = 2 * maxlen;
    std::unordered_map<std::uint32_t, std::size_t> radius_for;  // by joint support
    auto radius_of = [&](std::uint32_t mask) {
        auto it = radius_for.find(mask);
        if (it != radius_for.end()) return it->second;
        const auto top = parabolic_longest_length(W, mask);
        const std::size_t r = top ? std::max(out.join_radius, *top) : out.join_radius;
        return radius_for.emplace(mask, r).first->second;
    };
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const PairJoin pj =
                join_pair(sorted[i], sorted[j], radius_of(support(sorted[i]) | support(sorted[j])));
            if (pj.verdict == JoinVerdict::Exists) {
                if (!ids.count(pj.join->id())) {
                    out.problem = ShadowValidation::Problem::MissingJoin;
                    out.witness = {sorted[i], sorted[j], *pj.join};
                    return out;
                }
            } else if (pj.verdict == JoinVerdict::NotWithinCutoff) {
                if (!out.presumed_pairs) out.presumed_example = {sorted[i], sorted[j]};
                ++out.presumed_pairs;
            }
        }
    return out;
}

// ---- the shadow ------------------------------------------------------------

class GarsideShadow {
public:
    /// Validates; throws std::invalid_argument with the violation otherwise.
    GarsideShadow(const CoxeterSystem& W, std::vector<Element> elements, ShadowKind kind)
        : sys_(&W), kind_(kind) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        validation_ = validate_shadow(W, elements);
        if (!validation_.valid()) throw std::invalid_argument("not a Garside shadow: " + validation_.describe(W));
        elements_ = std::move(elements);
        for (Element g : elements_) {
            ids_.insert(g.id());
            M_ = std::max(M_, g.length());
        }
    }

    GarsideShadow(const GarsideShadow& o)
        : sys_(o.sys_), kind_(o.kind_), elements_(o.elements_), ids_(o.ids_), M_(o.M_), validation_(o.validation_) {}

    const CoxeterSystem& system() const { return *sys_; }
    const std::vector<Element>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t constant_M() const { return M_; }
    const ShadowKind& kind() const { return kind_; }
    const ShadowValidation& validation() const { return validation_; }
    bool contains(Element g) const { return ids_.count(g.id()) != 0; }

    /// pi_B(g), memoized.  Uses pi_B(g) = g for g in B and otherwise the join
    /// of pi_B(gs) over right descents s.
    Element project(Element g) const {
        if (contains(g)) return g;
        {
            std::lock_guard lock(mu_);
            auto it = cache_.find(g.id());
            if (it != cache_.end()) return sys_->element_by_id(it->second);
        }
        std::vector<Element> cands;
        for (Gen s : sys_->descents(g, Side::Right)) cands.push_back(project(sys_->right(g, s)));
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        Element best = cands.back();
        for (Element c : cands)
            if (c.length() > best.length()) best = c;
        bool top = true;
        for (Element c : cands)
            if (!weak_leq(c, best)) {
                top = false;
                break;
            }
        if (!top) best = project_by_scan(g);
        std::lock_guard lock(mu_);
        cache_.emplace(g.id(), best.id());
        return best;
    }

    /// pi_B(g) straight from the definition: the unique maximum of B below g.
    Element project_by_scan(Element g) const {
        std::vector<Element> below;
        for (Element b : elements_)
            if (b.length() <= g.length() && weak_leq(b, g)) below.push_back(b);
        return detail::unique_extremum(below, true, "B-projection");
    }

private:
    const CoxeterSystem* sys_;
    ShadowKind kind_;
    std::vector<Element> elements_;
    std::unordered_set<std::uint32_t> ids_;
    std::size_t M_ = 0;
    ShadowValidation validation_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint32_t, std::uint32_t> cache_;
};

inline Element b_projection(const GarsideShadow& B, Element g) { return B.project(g); }

/// P_b cut down to a ball.
inline std::vector<Element> partition_part(const GarsideShadow& B, Element b, std::size_t radius) {
    if (!B.contains(b)) throw std::invalid_argument("partition_part: " + B.system().format(b) + " is not in B");
    std::vector<Element> out;
    for (Element g : CayleyBall(B.system(), radius))
        if (B.project(g) == b) out.push_back(g);
    return out;
}

struct RefinementReport {
    bool passed = true;
    std::size_t elements_checked = 0;
    std::size_t parts_checked = 0;
    std::optional<std::pair<Element, Element>> counterexample;  // same pi_B', different pi_B
};

/// For B inside B': elements with equal pi_B' have equal pi_B, on a ball.
inline RefinementReport refinement_check(const GarsideShadow& B, const GarsideShadow& Bp, std::size_t radius) {
    for (Element b : B.elements())
        if (!Bp.contains(b))
            throw std::invalid_argument("refinement_check: " + B.system().format(b) + " lies in B but not in B'");
    RefinementReport r;
    std::unordered_map<std::uint32_t, Element> rep;  // pi_B'(x) -> first x
    for (Element x : CayleyBall(B.system(), radius)) {
        ++r.elements_checked;
        const Element key = Bp.project(x);
        auto [it, fresh] = rep.emplace(key.id(), x);
        if (fresh) {
            ++r.parts_checked;
            continue;
        }
        if (B.project(it->second) != B.project(x)) {
            r.passed = false;
            if (!r.counterexample) r.counterexample = {it->second, x};
        }
    }
    return r;
}

// ---- construction -----------------------------------------------------------

struct CutoffExceeded : std::runtime_error {
    CutoffExceeded(const std::string& what, std::size_t cutoff) : std::runtime_error(what), cutoff(cutoff) {}
    std::size_t cutoff;
};

/// Smallest shadow containing the seed, if it is found within the cutoff.
inline GarsideShadow garside_closure(const CoxeterSystem& W, const std::vector<Element>& seed, std::size_t cutoff) {
    std::vector<Element> members;
    std::unordered_set<std::uint32_t> ids;
    auto add = [&](Element g) {
        if (g.length() > cutoff)
            throw CutoffExceeded("closure left the ball of radius " + std::to_string(cutoff) + " at " + W.format(g),
                                 cutoff);
        if (ids.insert(g.id()).second) members.push_back(g);
    };
    add(W.identity());
    for (std::size_t s = 0; s < W.rank(); ++s) add(W.generator(static_cast<Gen>(s)));
    for (Element g : seed) add(g);

    // Worklist: each new member is paired with every earlier one exactly once.
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Element b = members[i];
        for (Gen s : W.descents(b, Side::Left)) add(W.left(s, b));
        for (std::size_t j = 0; j < i; ++j) {
            const PairJoin pj = join_pair(members[j], b, cutoff);
            if (pj.verdict == JoinVerdict::Exists)
                add(*pj.join);
            else if (pj.verdict == JoinVerdict::NotWithinCutoff)
                throw CutoffExceeded("join of " + W.format(members[j]) + " and " + W.format(b) +
                                         " not decided within radius " + std::to_string(cutoff),
                                     cutoff);
        }
    }
    return GarsideShadow(W, members, ShadowKind::closure());
}

/// L_m (kind low / mlow) or Gamma (kind gamma) as a validated shadow.
inline GarsideShadow shadow_from_gates(const CoxeterSystem& W, ShadowKind kind) {
    std::vector<Element> gates;
    switch (kind.provenance) {
        case Provenance::Low: gates = shi_gates(W, 0); break;
        case Provenance::MLow: gates = shi_gates(W, kind.m); break;
        case Provenance::Gamma: gates = cone_type_gates(W); break;
        default: throw std::invalid_argument("shadow_from_gates: kind must be low, mlow=M or gamma");
    }
    try {
        return GarsideShadow(W, std::move(gates), kind);
    } catch (const std::invalid_argument& e) {
        throw std::logic_error(std::string("gate set failed shadow validation: ") + e.what());
    }
}

// ---- serialization ----------------------------------------------------------

/// FNV-1a over generator names and labels.
inline std::uint64_t matrix_hash(const CoxeterMatrix& m) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    };
    for (const auto& name : m.names()) {
        for (unsigned char c : name) mix(c);
        mix(0);
    }
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j) {
            const int v = m.label(i, j);
            for (int k = 0; k < 4; ++k) mix(static_cast<unsigned char>((v >> (8 * k)) & 0xff));
        }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

/// Text form:
///   garside-shadow v1
///   group <16 hex digits>
///   kind <low|mlow=M|gamma|closure|explicit>
///   M <n>
///   elements <count>
///   <normal form>        one per line, ShortLex order, "-" for id
inline std::string serialize_shadow(const GarsideShadow& B) {
    const CoxeterSystem& W = B.system();
    std::ostringstream os;
    os << "garside-shadow v1\n";
    os << "group " << hash_hex(matrix_hash(W.matrix())) << "\n";
    os << "kind " << to_string(B.kind()) << "\n";
    os << "M " << B.constant_M() << "\n";
    os << "elements " << B.size() << "\n";
    for (Element g : B.elements()) os << W.format(g) << "\n";
    return os.str();
}

struct ShadowFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShadowMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses and revalidates.  Syntax problems raise ShadowFormatError; a
/// different group, a wrong M, a non-normal word or a failed validation
/// raise ShadowMismatch.
inline GarsideShadow deserialize_shadow(const CoxeterSystem& W, const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    auto next = [&](const char* what) {
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return;
        }
        throw ShadowFormatError(std::string("unexpected end of shadow file, expected ") + what);
    };
    auto field = [&](const std::string& key) {
        next(key.c_str());
        if (line.rfind(key + " ", 0) != 0)
            throw ShadowFormatError("line " + std::to_string(lineno) + ": expected '" + key + " ...'");
        return line.substr(key.size() + 1);
    };
    auto number = [&](const std::string& s, const std::string& key) {
        if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
            throw ShadowFormatError("line " + std::to_string(lineno) + ": bad " + key + " value '" + s + "'");
        return static_cast<std::size_t>(std::stoul(s));
    };

    next("header");
    if (line != "garside-shadow v1") throw ShadowFormatError("line " + std::to_string(lineno) + ": not a shadow file");
    const std::string group = field("group");
    if (group != hash_hex(matrix_hash(W.matrix())))
        throw ShadowMismatch("shadow was computed for group " + group + ", not " +
                             hash_hex(matrix_hash(W.matrix())));
    ShadowKind kind;
    try {
        kind = parse_shadow_kind(field("kind"));
    } catch (const std::invalid_argument& e) {
        throw ShadowFormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
    const std::size_t M = number(field("M"), "M");
    const std::size_t count = number(field("elements"), "elements");
    std::vector<Element> elems;
    for (std::size_t i = 0; i < count; ++i) {
        next("element word");
        Word w;
        try {
            w = W.parse_word(line);
        } catch (const std::invalid_argument& e) {
            throw ShadowFormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
        const Element g = W.normal_form(w);
        if (g.word() != w)
            throw ShadowMismatch("line " + std::to_string(lineno) + ": '" + line + "' is not a normal form");
        elems.push_back(g);
    }
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line != "\r")
            throw ShadowFormatError("line " + std::to_string(lineno) + ": trailing content after elements");
    }
    std::optional<GarsideShadow> B;
    try {
        B.emplace(W, elems, kind);
    } catch (const std::invalid_argument& e) {
        throw ShadowMismatch(e.what());
    }
    if (B->constant_M() != M)
        throw ShadowMismatch("declared M " + std::to_string(M) + " but elements give " +
                             std::to_string(B->constant_M()));
    if (B->size() != count) throw ShadowMismatch("duplicate elements in shadow file");
    return std::move(*B);
}

}  // namespace garside
