#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace garside {

/// Index of a generator in the declared generator order.
using Gen = std::uint8_t;

/// A finite word over the generators.  Prefixes and infixes use the 1-based
/// conventions v(i) and v(i,j) where v(i) = v once i reaches |v|.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Gen> letters) : letters_(letters) {}
    explicit Word(std::vector<Gen> letters) : letters_(std::move(letters)) {}
    Word(std::span<const Gen> letters) : letters_(letters.begin(), letters.end()) {}  // NOLINT

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Gen operator[](std::size_t i) const { return letters_[i]; }
    Gen front() const { return letters_.front(); }
    Gen back() const { return letters_.back(); }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }
    const std::vector<Gen>& letters() const { return letters_; }

    void push_back(Gen g) { letters_.push_back(g); }
    void pop_back() { letters_.pop_back(); }

    /// v(i): the first min(i, |v|) letters.
    Word prefix(std::size_t i) const {
        return Word(std::span<const Gen>(letters_.data(), std::min(i, letters_.size())));
    }

    /// v(i, j): v(j) with the prefix v(i-1) removed (1-based, i <= j).
    Word infix(std::size_t i, std::size_t j) const {
        const std::size_t hi = std::min(j, letters_.size());
        const std::size_t lo = std::min(i == 0 ? 0 : i - 1, hi);
        return Word(std::span<const Gen>(letters_.data() + lo, hi - lo));
    }

    Word reversed() const { return Word(std::vector<Gen>(letters_.rbegin(), letters_.rend())); }

    friend Word operator+(Word a, const Word& b) {
        a.letters_.insert(a.letters_.end(), b.letters_.begin(), b.letters_.end());
        return a;
    }

    friend bool operator==(const Word&, const Word&) = default;

    /// ShortLex: shorter words first, then lexicographic in generator order.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.letters_ <=> b.letters_;
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (Gen g : letters_) {
            h ^= g;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ letters_.size());
    }

private:
    std::vector<Gen> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return w.hash(); }
};

}  // namespace garside
