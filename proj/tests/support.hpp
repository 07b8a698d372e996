#pragma once

// Test systems and brute-force oracles shared by the unit tests.

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "garside/garside.hpp"

namespace testing_support {

using namespace garside;

struct NamedSystem {
    std::string name;
    std::vector<std::string> gens;
    std::vector<std::vector<int>> labels;
};

inline const std::vector<NamedSystem>& test_systems() {
    static const std::vector<NamedSystem> all = {
        {"Dinf", {"s", "t"}, {{1, 0}, {0, 1}}},
        {"I2_3", {"s", "t"}, {{1, 3}, {3, 1}}},
        {"I2_4", {"s", "t"}, {{1, 4}, {4, 1}}},
        {"A2aff", {"s", "t", "u"}, {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}},
        {"A1xA1aff", {"a", "b", "c", "d"}, {{1, 0, 2, 2}, {0, 1, 2, 2}, {2, 2, 1, 0}, {2, 2, 0, 1}}},
        {"Tri334", {"s", "t", "u"}, {{1, 3, 3}, {3, 1, 4}, {3, 4, 1}}},
    };
    return all;
}

inline std::unique_ptr<CoxeterSystem> make(const NamedSystem& n) {
    return std::make_unique<CoxeterSystem>(CoxeterMatrix(n.gens, n.labels));
}

inline std::unique_ptr<CoxeterSystem> make(const std::string& name) {
    for (const auto& n : test_systems())
        if (n.name == name) return make(n);
    throw std::invalid_argument("no test system " + name);
}

inline std::string system_name(const ::testing::TestParamInfo<NamedSystem>& info) { return info.param.name; }

/// Geometric representation in floating point, built independently of the
/// exact root code.  Elements are compared by rounded matrix entries.
class FloatRep {
public:
    explicit FloatRep(const CoxeterSystem& W) : n_(W.rank()) {
        const auto& m = W.matrix();
        B_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                const int l = m.label(i, j);
                B_[i * n_ + j] = i == j ? 1.0 : (l == 0 ? -1.0 : -std::cos(std::numbers::pi / l));
            }
    }

    using Mat = std::vector<double>;

    Mat identity() const {
        Mat I(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) I[i * n_ + i] = 1.0;
        return I;
    }

    /// Right-multiplies by the reflection of generator s.
    Mat times_gen(const Mat& A, std::size_t s) const {
        // sigma_s(e_j) = e_j - 2 B(s, j) e_s; column j of A*sigma = A e_j - 2 B(s,j) A e_s
        Mat out = A;
        for (std::size_t j = 0; j < n_; ++j) {
            const double c = 2.0 * B_[s * n_ + j];
            if (c == 0.0) continue;
            for (std::size_t r = 0; r < n_; ++r) out[r * n_ + j] -= c * A[r * n_ + s];
        }
        return out;
    }

    Mat of_word(const Word& w) const {
        Mat A = identity();
        for (Gen c : w) A = times_gen(A, c);
        return A;
    }

    std::vector<long long> key(const Mat& A) const {
        std::vector<long long> k;
        for (double x : A) k.push_back(std::llround(x * 1e6));
        return k;
    }

private:
    std::size_t n_;
    std::vector<double> B_;
};

/// Every word of length <= n, grouped by group element (via FloatRep); for
/// each element the ShortLex-least word and the set of shortest words.
struct BruteForceBall {
    struct Entry {
        Word normal;
        std::vector<Word> reduced;  // every word of minimal length
    };
    std::map<std::vector<long long>, Entry> by_key;

    BruteForceBall(const CoxeterSystem& W, std::size_t n) : rep(W) {
        std::vector<std::pair<Word, FloatRep::Mat>> layer{{Word{}, rep.identity()}};
        insert(Word{}, rep.identity());
        for (std::size_t len = 1; len <= n; ++len) {
            std::vector<std::pair<Word, FloatRep::Mat>> next;
            for (const auto& [w, A] : layer)
                for (std::size_t s = 0; s < W.rank(); ++s) {
                    Word v = w;
                    v.push_back(static_cast<Gen>(s));
                    FloatRep::Mat B = rep.times_gen(A, s);
                    insert(v, B);
                    next.emplace_back(std::move(v), std::move(B));
                }
            layer = std::move(next);
        }
    }

    const Entry& lookup(const Word& w) const { return by_key.at(rep.key(rep.of_word(w))); }

    FloatRep rep;

private:
    void insert(const Word& w, const FloatRep::Mat& A) {
        auto k = rep.key(A);
        auto it = by_key.find(k);
        if (it == by_key.end()) {
            by_key.emplace(std::move(k), Entry{w, {w}});
            return;
        }
        Entry& e = it->second;
        if (w.size() < e.normal.size()) {
            e = Entry{w, {w}};
        } else if (w.size() == e.normal.size()) {
            e.reduced.push_back(w);
            if (w < e.normal) e.normal = w;
        }
    }
};

/// Word length by brute force: the word is reduced iff no shorter word gives
/// the same matrix.
inline bool brute_reduced(const BruteForceBall& bf, const Word& w) { return bf.lookup(w).normal.size() == w.size(); }

}  // namespace testing_support
