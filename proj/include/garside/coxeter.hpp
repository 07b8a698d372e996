#pragma once

// Coxeter systems, their elements in ShortLex normal form, and their roots.
//
// Elements and positive roots are interned per system.  Both tables grow
// lazily: multiplication results, inverses and reflections are cached in
// atomic slots, so a CoxeterSystem may be shared read-only between threads
// while it fills in.  The system must outlive every Element and Wall it hands
// out.

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "scalar.hpp"
#include "word.hpp"

namespace garside {

inline constexpr std::size_t kMaxRank = 16;

/// Label value standing for m = infinity.
inline constexpr int kInfinity = 0;

class MatrixError : public std::invalid_argument {
public:
    MatrixError(const std::string& what, int row, int col)
        : std::invalid_argument(what), row_(row), col_(col) {}
    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_;
    int col_;
};

/// Symmetric matrix of labels m_st with m_ss = 1 and 0 encoding infinity.
class CoxeterMatrix {
public:
    CoxeterMatrix(std::vector<std::string> names, std::vector<std::vector<int>> entries)
        : names_(std::move(names)), entries_(std::move(entries)) {
        validate();
    }

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    int label(std::size_t s, std::size_t t) const { return entries_[s][t]; }
    const std::vector<std::vector<int>>& entries() const { return entries_; }

    friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

private:
    void validate() const {
        const std::size_t n = names_.size();
        if (n == 0) throw MatrixError("a Coxeter system needs at least one generator", -1, -1);
        if (n > kMaxRank) throw MatrixError("rank exceeds " + std::to_string(kMaxRank), -1, -1);
        for (std::size_t i = 0; i < n; ++i) {
            if (names_[i].empty()) throw MatrixError("empty generator name", -1, -1);
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j])
                    throw MatrixError("duplicate generator name '" + names_[i] + "'", -1, -1);
        }
        if (entries_.size() != n) throw MatrixError("matrix must have " + std::to_string(n) + " rows", -1, -1);
        for (std::size_t i = 0; i < n; ++i) {
            const int r = static_cast<int>(i) + 1;
            if (entries_[i].size() != n)
                throw MatrixError("row " + std::to_string(r) + " must have " + std::to_string(n) + " entries", r, -1);
            for (std::size_t j = 0; j < n; ++j) {
                const int c = static_cast<int>(j) + 1;
                const int m = entries_[i][j];
                const std::string cell = "(" + std::to_string(r) + "," + std::to_string(c) + ")";
                if (i == j) {
                    if (m != 1) throw MatrixError("diagonal entry " + cell + " must be 1", r, c);
                    continue;
                }
                if (m != entries_[j][i])
                    throw MatrixError("matrix is not symmetric at cell " + cell, r, c);
                if (m == 1 || m < 0) throw MatrixError("entry " + cell + " must be >= 2 or 0 (infinity)", r, c);
                if (!scalars::label_supported(m))
                    throw MatrixError("unsupported label " + std::to_string(m) + " at cell " + cell +
                                          " (supported: 2,3,4,5,6 and 0 for infinity)",
                                      r, c);
            }
        }
    }

    std::vector<std::string> names_;
    std::vector<std::vector<int>> entries_;
};

/// A vector in the span of the simple roots, in simple-root coordinates.
struct Root {
    std::vector<Scalar> coeffs;

    bool is_positive() const {
        bool any = false;
        for (const auto& c : coeffs) {
            const int sg = c.sign();
            if (sg < 0) return false;
            any = any || sg > 0;
        }
        return any;
    }
    bool is_negative() const {
        bool any = false;
        for (const auto& c : coeffs) {
            const int sg = c.sign();
            if (sg > 0) return false;
            any = any || sg < 0;
        }
        return any;
    }
    Root operator-() const {
        Root r = *this;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }
    friend bool operator==(const Root&, const Root&) = default;
};

/// A wall of the Cayley graph, identified with its positive root.
struct Wall {
    std::uint32_t root = 0;
    friend bool operator==(Wall, Wall) = default;
    friend auto operator<=>(Wall, Wall) = default;
};

/// A root up to sign, referring to an interned positive root.
struct SignedRoot {
    std::uint32_t root = 0;
    bool negative = false;
    friend bool operator==(SignedRoot, SignedRoot) = default;
};

enum class Side { Left, Right };

class CoxeterSystem;

/// A group element, stored by its ShortLex normal form inside its system.
class Element {
public:
    Element() = default;

    const CoxeterSystem& system() const { return *sys_; }
    std::uint32_t id() const { return id_; }
    bool valid() const { return sys_ != nullptr; }
    bool is_identity() const { return id_ == 0; }
    inline const Word& word() const;
    std::size_t length() const { return word().size(); }

    friend bool operator==(Element a, Element b) { return a.sys_ == b.sys_ && a.id_ == b.id_; }
    /// ShortLex order of normal forms.
    friend std::strong_ordering operator<=>(Element a, Element b) {
        if (a.id_ == b.id_ && a.sys_ == b.sys_) return std::strong_ordering::equal;
        return a.word() <=> b.word();
    }

private:
    friend class CoxeterSystem;
    Element(const CoxeterSystem* sys, std::uint32_t id) : sys_(sys), id_(id) {}

    const CoxeterSystem* sys_ = nullptr;
    std::uint32_t id_ = 0;
};

struct ElementHash {
    std::size_t operator()(Element e) const { return std::hash<std::uint32_t>{}(e.id()); }
};

namespace detail {

/// Append-only table whose published entries never move.  Appends must be
/// serialized by the caller; reads of published entries need no lock.
template <class T>
class ChunkedStore {
    static constexpr std::size_t kChunkBits = 10;
    static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
    static constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

public:
    ChunkedStore() : chunks_(new std::atomic<T*>[kMaxChunks]) {
        for (std::size_t i = 0; i < kMaxChunks; ++i) chunks_[i].store(nullptr, std::memory_order_relaxed);
    }
    ~ChunkedStore() {
        for (std::size_t i = 0; i < kMaxChunks; ++i) delete[] chunks_[i].load(std::memory_order_relaxed);
    }
    ChunkedStore(const ChunkedStore&) = delete;
    ChunkedStore& operator=(const ChunkedStore&) = delete;

    std::uint32_t size() const { return size_.load(std::memory_order_acquire); }

    T& operator[](std::uint32_t i) const {
        return chunks_[i >> kChunkBits].load(std::memory_order_acquire)[i & (kChunkSize - 1)];
    }

    /// Reserves the next slot; the entry becomes visible via publish().
    std::uint32_t allocate() {
        const std::uint32_t i = size_.load(std::memory_order_relaxed);
        const std::size_t c = i >> kChunkBits;
        if (c >= kMaxChunks) throw std::length_error("element table exhausted");
        if (chunks_[c].load(std::memory_order_relaxed) == nullptr)
            chunks_[c].store(new T[kChunkSize], std::memory_order_release);
        return i;
    }
    void publish(std::uint32_t i) { size_.store(i + 1, std::memory_order_release); }

private:
    std::unique_ptr<std::atomic<T*>[]> chunks_;
    std::atomic<std::uint32_t> size_{0};
};

struct ElementNode {
    Word word;
    std::array<std::atomic<std::int32_t>, kMaxRank> right;
    std::atomic<std::int32_t> inverse{-1};

    ElementNode() {
        for (auto& r : right) r.store(-1, std::memory_order_relaxed);
    }
};

struct RootNode {
    std::vector<Scalar> coeffs;
    std::vector<Scalar> simple_form;  // B(alpha_s, beta) for each s
    // reflect[s] = 2*id + negative, or -1 while unknown
    std::array<std::atomic<std::int64_t>, kMaxRank> reflect;
    int depth = 0;
    int dominance = 0;  // number of positive roots strictly dominated
    Gen descent = 0;    // generator lowering the depth (unused for simple roots)
    std::uint32_t parent = 0;

    RootNode() {
        for (auto& r : reflect) r.store(-1, std::memory_order_relaxed);
    }
};

inline std::size_t hash_coeffs(const std::vector<Scalar>& v) {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& c : v) h = (h ^ c.hash()) * 0x100000001b3ull;
    return h;
}

}  // namespace detail

class CoxeterSystem {
public:
    explicit CoxeterSystem(CoxeterMatrix matrix) : matrix_(std::move(matrix)) {
        const std::size_t n = rank();
        form_.resize(n * n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
                form_[s * n + t] = s == t ? scalars::rational(1) : scalars::form_value(matrix_.label(s, t));
        const std::uint32_t id = elems_.allocate();
        elems_.publish(id);
        elem_index_.emplace(Word{}, id);
        for (std::size_t s = 0; s < n; ++s) {
            Root r;
            r.coeffs.assign(n, scalars::rational(0));
            r.coeffs[s] = scalars::rational(1);
            simple_.push_back(intern_root(r.coeffs));
        }
    }
    CoxeterSystem(const CoxeterSystem&) = delete;
    CoxeterSystem& operator=(const CoxeterSystem&) = delete;

    const CoxeterMatrix& matrix() const { return matrix_; }
    std::size_t rank() const { return matrix_.rank(); }
    const std::string& generator_name(Gen s) const { return matrix_.names()[s]; }

    // ---- elements -------------------------------------------------------

    Element identity() const { return Element(this, 0); }
    /// Element with a given interning id (as returned by Element::id()).
    Element element_by_id(std::uint32_t id) const {
        if (id >= elems_.size()) throw std::out_of_range("element id " + std::to_string(id) + " not interned");
        return Element(this, id);
    }
    Element generator(Gen s) const {
        check_gen(s);
        return Element(this, intern_nf(Word{s}));
    }
    const Word& word(Element g) const { return elems_[g.id()].word; }
    std::size_t length(Element g) const { return word(g).size(); }

    /// Element represented by an arbitrary word.
    Element normal_form(const Word& w) const {
        for (Gen s : w) check_gen(s);
        Element g = identity();
        for (Gen s : w) g = right(g, s);
        return g;
    }
    Element element(std::string_view text) const { return normal_form(parse_word(text)); }

    /// g * s.
    Element right(Element g, Gen s) const {
        check_mine(g);
        auto& slot = elems_[g.id()].right[s];
        std::int32_t c = slot.load(std::memory_order_acquire);
        if (c >= 0) return Element(this, static_cast<std::uint32_t>(c));
        const std::uint32_t r = compute_right(g.id(), s);
        slot.store(static_cast<std::int32_t>(r), std::memory_order_release);
        elems_[r].right[s].store(static_cast<std::int32_t>(g.id()), std::memory_order_release);
        return Element(this, r);
    }

    /// s * g.
    Element left(Gen s, Element g) const { return inverse(right(inverse(g), s)); }

    Element inverse(Element g) const {
        check_mine(g);
        auto& slot = elems_[g.id()].inverse;
        std::int32_t c = slot.load(std::memory_order_acquire);
        if (c >= 0) return Element(this, static_cast<std::uint32_t>(c));
        Element h = identity();
        const Word& w = word(g);
        for (auto it = w.end(); it != w.begin();) h = right(h, *--it);
        slot.store(static_cast<std::int32_t>(h.id()), std::memory_order_release);
        elems_[h.id()].inverse.store(static_cast<std::int32_t>(g.id()), std::memory_order_release);
        return h;
    }

    Element multiply(Element g, Element h) const {
        check_mine(g);
        check_mine(h);
        for (Gen s : word(h)) g = right(g, s);
        return g;
    }

    /// d(g, h) = l(g^-1 h).
    std::size_t word_metric(Element g, Element h) const { return length(multiply(inverse(g), h)); }

    bool is_right_descent(Element g, Gen s) const { return length(right(g, s)) < length(g); }
    bool is_left_descent(Gen s, Element g) const { return is_right_descent(inverse(g), s); }

    std::vector<Gen> descents(Element g, Side side) const {
        std::vector<Gen> out;
        const Element probe = side == Side::Right ? g : inverse(g);
        for (std::size_t s = 0; s < rank(); ++s)
            if (is_right_descent(probe, static_cast<Gen>(s))) out.push_back(static_cast<Gen>(s));
        return out;
    }

    /// w is a suffix of g: l(g) = l(g w^-1) + l(w).
    bool is_suffix(Element w, Element g) const {
        return length(g) == length(multiply(g, inverse(w))) + length(w);
    }

    // ---- roots and walls ------------------------------------------------

    Wall simple_wall(Gen s) const {
        check_gen(s);
        return Wall{simple_[s]};
    }
    Root simple_root(Gen s) const { return root(simple_wall(s)); }
    Root root(Wall w) const { return Root{roots_[w.root].coeffs}; }
    std::size_t root_count() const { return roots_.size(); }

    /// Bilinear form of the geometric representation on two simple roots.
    const Scalar& form(Gen s, Gen t) const { return form_[s * rank() + t]; }

    Scalar form(const Root& a, const Root& b) const {
        Scalar acc;
        const std::size_t n = rank();
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coeffs[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b.coeffs[j].is_zero()) continue;
                acc += a.coeffs[i] * form_[i * n + j] * b.coeffs[j];
            }
        }
        return acc;
    }
    Scalar form(Wall a, Wall b) const {
        const RootNode& nb = roots_[b.root];
        Scalar acc;
        for (std::size_t s = 0; s < rank(); ++s)
            if (!nb.coeffs[s].is_zero()) acc += nb.coeffs[s] * roots_[a.root].simple_form[s];
        return acc;
    }

    /// B(a, b) <= -1: the far half-spaces of the two walls are disjoint.
    bool walls_opposed(Wall a, Wall b) const {
        if (a.root > b.root) std::swap(a, b);
        const std::uint64_t key = (static_cast<std::uint64_t>(a.root) << 32) | b.root;
        {
            std::lock_guard lock(mu_);
            auto it = opposed_.find(key);
            if (it != opposed_.end()) return it->second;
        }
        const bool v = (form(a, b) + scalars::rational(1)).sign() <= 0;
        std::lock_guard lock(mu_);
        opposed_.emplace(key, v);
        return v;
    }

    /// sigma_s(beta) = beta - 2 B(alpha_s, beta) alpha_s on arbitrary vectors.
    Root reflect(Gen s, const Root& beta) const {
        check_gen(s);
        Scalar b;
        for (std::size_t t = 0; t < rank(); ++t) b += form(s, static_cast<Gen>(t)) * beta.coeffs[t];
        Root out = beta;
        out.coeffs[s] -= scalars::rational(2) * b;
        return out;
    }

    SignedRoot reflect(Gen s, SignedRoot beta) const {
        auto& slot = roots_[beta.root].reflect[s];
        std::int64_t c = slot.load(std::memory_order_acquire);
        if (c < 0) {
            std::uint32_t id;
            bool neg;
            if (beta.root == simple_[s]) {
                id = beta.root;
                neg = true;
            } else {
                const RootNode& node = roots_[beta.root];
                std::vector<Scalar> v = node.coeffs;
                v[s] -= scalars::rational(2) * node.simple_form[s];
                id = intern_root(v);
                neg = false;
            }
            c = static_cast<std::int64_t>(id) * 2 + (neg ? 1 : 0);
            slot.store(c, std::memory_order_release);
        }
        return SignedRoot{static_cast<std::uint32_t>(c >> 1), ((c & 1) != 0) != beta.negative};
    }

    /// g(beta).
    SignedRoot act(Element g, SignedRoot beta) const { return act_word(word(g), beta); }
    /// g^-1(beta).
    SignedRoot act_inverse(Element g, SignedRoot beta) const { return act_word_inverse(word(g), beta); }

    SignedRoot act_word(const Word& w, SignedRoot beta) const {
        for (auto it = w.end(); it != w.begin();) beta = reflect(*--it, beta);
        return beta;
    }
    SignedRoot act_word_inverse(const Word& w, SignedRoot beta) const {
        for (Gen s : w) beta = reflect(s, beta);
        return beta;
    }

    /// Length of a shortest element sending the root negative.
    int depth(Wall w) const { return roots_[w.root].depth; }
    /// Number of walls separating the identity from this wall.
    int dominance_count(Wall w) const { return roots_[w.root].dominance; }
    /// B(alpha_s, beta).
    const Scalar& simple_form(Gen s, Wall w) const { return roots_[w.root].simple_form[s]; }

    /// The wall crossed by the edge from g to gs.
    Wall wall_of_edge(Element g, Gen s) const {
        return Wall{act(g, SignedRoot{simple_[s], false}).root};
    }

    /// The vertex g lies in the half-space of the wall not containing id.
    bool on_far_side(Element g, Wall w) const { return act_inverse(g, SignedRoot{w.root, false}).negative; }

    bool separates(Wall w, Element g, Element h) const { return on_far_side(g, w) != on_far_side(h, w); }

    /// The wall g.W (translate of a wall by g).
    Wall translate(Element g, Wall w) const { return Wall{act(g, SignedRoot{w.root, false}).root}; }
    Wall translate_inverse(Element g, Wall w) const {
        return Wall{act_inverse(g, SignedRoot{w.root, false}).root};
    }

    /// Walls separating id from g, in the order a normal-form path crosses them.
    std::vector<Wall> inversion_walls(Element g) const {
        std::vector<Wall> out;
        const Word& w = word(g);
        Element p = identity();
        for (Gen s : w) {
            out.push_back(wall_of_edge(p, s));
            p = right(p, s);
        }
        return out;
    }

    /// All walls separating g from h, sorted by root id.
    std::vector<Wall> separating_walls(Element g, Element h) const {
        std::vector<Wall> out;
        for (Wall w : inversion_walls(multiply(inverse(g), h))) out.push_back(translate(g, w));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// The reflection fixing the wall, as a group element.
    Element reflection(Wall w) const {
        Word path;
        std::uint32_t r = w.root;
        while (roots_[r].depth > 1) {
            path.push_back(roots_[r].descent);
            r = roots_[r].parent;
        }
        Gen mid = 0;
        for (std::size_t s = 0; s < rank(); ++s)
            if (simple_[s] == r) mid = static_cast<Gen>(s);
        Word full = path;
        full.push_back(mid);
        for (auto it = path.end(); it != path.begin();) full.push_back(*--it);
        return normal_form(full);
    }

    /// The wall of a reflection r; throws if r is not a reflection.
    Wall wall_of_reflection(Element r) const {
        const Word& w = word(r);
        if (w.size() % 2 == 1) {
            const std::size_t k = w.size() / 2;
            Element p = normal_form(w.prefix(k));
            Wall cand = wall_of_edge(p, w[k]);
            if (reflection(cand) == r) return cand;
        }
        throw std::invalid_argument("element " + format_word(w) + " is not a reflection");
    }

    /// All positive roots of depth at most d, by breadth-first search.
    std::vector<Wall> positive_roots_up_to_depth(int d) const {
        std::vector<Wall> out;
        std::vector<std::uint8_t> seen;
        auto mark = [&](std::uint32_t id) {
            if (id >= seen.size()) seen.resize(id + 1, 0);
            if (seen[id]) return false;
            seen[id] = 1;
            return true;
        };
        for (auto id : simple_)
            if (d >= 1 && mark(id)) out.push_back(Wall{id});
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Wall w = out[i];
            if (depth(w) >= d) continue;
            for (std::size_t s = 0; s < rank(); ++s) {
                if (simple_form(static_cast<Gen>(s), w).sign() >= 0) continue;
                SignedRoot r = reflect(static_cast<Gen>(s), SignedRoot{w.root, false});
                if (mark(r.root)) out.push_back(Wall{r.root});
            }
        }
        return out;
    }

    // ---- words as text --------------------------------------------------

    /// Words render as concatenated names when every name is one character,
    /// otherwise as names joined by '.'; the empty word renders as "-".
    std::string format_word(const Word& w) const {
        if (w.empty()) return "-";
        std::string out;
        const bool compact = single_char_names();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!compact && i > 0) out += '.';
            out += generator_name(w[i]);
        }
        return out;
    }
    std::string format(Element g) const { return format_word(word(g)); }

    Word parse_word(std::string_view text) const {
        Word out;
        std::string_view t = trim(text);
        if (t.empty() || t == "-" || t == "id" || t == "ε") return out;
        if (single_char_names()) {
            for (char c : t) {
                if (c == ' ' || c == '.' || c == '\t') continue;
                out.push_back(lookup(std::string(1, c)));
            }
            return out;
        }
        std::string cur;
        auto flush = [&] {
            if (!cur.empty()) out.push_back(lookup(cur));
            cur.clear();
        };
        for (char c : t) {
            if (c == '.' || c == ' ' || c == ',' || c == '\t')
                flush();
            else
                cur += c;
        }
        flush();
        return out;
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    }

    bool single_char_names() const {
        for (const auto& n : matrix_.names())
            if (n.size() != 1) return false;
        return true;
    }

    Gen lookup(const std::string& name) const {
        for (std::size_t s = 0; s < rank(); ++s)
            if (matrix_.names()[s] == name) return static_cast<Gen>(s);
        throw std::invalid_argument("unknown generator '" + name + "'");
    }

    void check_gen(Gen s) const {
        if (s >= rank()) throw std::out_of_range("generator index out of range");
    }
    void check_mine(Element g) const {
        if (&g.system() != this) throw std::invalid_argument("element belongs to a different Coxeter system");
    }

    std::uint32_t intern_nf(const Word& w) const {
        std::lock_guard lock(mu_);
        auto it = elem_index_.find(w);
        if (it != elem_index_.end()) return it->second;
        const std::uint32_t id = elems_.allocate();
        elems_[id].word = w;
        elems_.publish(id);
        elem_index_.emplace(w, id);
        return id;
    }

    Word peel_normal_form(Word cur) const {
        Word out;
        for (;;) {
            bool found = false;
            for (std::size_t t = 0; t < rank() && !found; ++t) {
                if (act_word_inverse(cur, SignedRoot{simple_[t], false}).negative) {
                    out.push_back(static_cast<Gen>(t));
                    cur = Word{static_cast<Gen>(t)} + cur;
                    found = true;
                }
            }
            if (!found) return out;
        }
    }

    std::uint32_t compute_right(std::uint32_t gid, Gen s) const {
        const Word w = elems_[gid].word;
        if (w.empty()) return intern_nf(Word{s});
        const bool ascent = !act_word(w, SignedRoot{simple_[s], false}).negative;
        if (ascent) {
            // The ShortLex normal form of gs starts with its smallest left descent.
            const Gen f = w.front();
            Gen t = f;
            for (Gen u = 0; u < f; ++u) {
                SignedRoot y = reflect(s, act_word_inverse(w, SignedRoot{simple_[u], false}));
                if (y.negative) {
                    t = u;
                    break;
                }
            }
            if (t != f) return intern_nf(Word{t} + w);  // t.g.s = g
            const Element suffix(this, intern_nf(w.infix(2, w.size())));
            const Element h = right(suffix, s);
            return intern_nf(Word{f} + word(h));
        }
        if (w.back() == s) return intern_nf(w.prefix(w.size() - 1));
        Word ws = w;
        ws.push_back(s);
        return intern_nf(peel_normal_form(ws));
    }

    std::uint32_t intern_root(const std::vector<Scalar>& v) const {
        std::lock_guard lock(mu_);
        const std::size_t h = detail::hash_coeffs(v);
        auto& bucket = root_index_[h];
        for (auto id : bucket)
            if (roots_[id].coeffs == v) return id;
        const std::size_t n = rank();
        std::vector<Scalar> sf(n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
                if (!v[t].is_zero()) sf[s] += form_[s * n + t] * v[t];

        int depth = 1;
        int dominance = 0;
        Gen descent = 0;
        std::uint32_t parent = 0;
        bool simple = true;
        for (std::size_t t = 0, nz = 0; t < n; ++t)
            if (!v[t].is_zero()) {
                ++nz;
                if (nz > 1 || !(v[t] == scalars::rational(1))) simple = false;
            }
        if (!simple) {
            std::size_t s = 0;
            while (s < n && sf[s].sign() <= 0) ++s;
            if (s == n) throw std::logic_error("positive root without a depth-lowering reflection");
            std::vector<Scalar> pv = v;
            pv[s] -= scalars::rational(2) * sf[s];
            parent = intern_root(pv);
            descent = static_cast<Gen>(s);
            depth = roots_[parent].depth + 1;
            dominance = roots_[parent].dominance + ((sf[s] - scalars::rational(1)).sign() >= 0 ? 1 : 0);
        }
        const std::uint32_t id = roots_.allocate();
        RootNode& node = roots_[id];
        node.coeffs = v;
        node.simple_form = std::move(sf);
        node.depth = depth;
        node.dominance = dominance;
        node.descent = descent;
        node.parent = parent;
        roots_.publish(id);
        root_index_[h].push_back(id);
        return id;
    }

    using ElementNode = detail::ElementNode;
    using RootNode = detail::RootNode;

    CoxeterMatrix matrix_;
    std::vector<Scalar> form_;
    std::vector<std::uint32_t> simple_;
    mutable std::recursive_mutex mu_;
    mutable detail::ChunkedStore<ElementNode> elems_;
    mutable std::unordered_map<Word, std::uint32_t, WordHash> elem_index_;
    mutable detail::ChunkedStore<RootNode> roots_;
    mutable std::unordered_map<std::size_t, std::vector<std::uint32_t>> root_index_;
    mutable std::unordered_map<std::uint64_t, bool> opposed_;
};

inline const Word& Element::word() const { return sys_->word(*this); }

}  // namespace garside
