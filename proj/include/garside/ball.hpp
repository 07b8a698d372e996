#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxeter.hpp"

namespace garside {

/// All elements of length at most `radius`, in ShortLex order.
class CayleyBall {
public:
    CayleyBall(const CoxeterSystem& W, std::size_t radius) : sys_(&W), radius_(radius) {
        std::vector<Element> level{W.identity()};
        std::size_t start = 0;
        for (std::size_t r = 0;; ++r) {
            std::sort(level.begin(), level.end());
            level_start_.push_back(start);
            for (Element g : level) {
                index_.emplace(g.id(), elements_.size());
                elements_.push_back(g);
            }
            start = elements_.size();
            if (r == radius) break;
            std::vector<Element> next;
            std::unordered_map<std::uint32_t, bool> seen;
            for (Element g : level)
                for (std::size_t s = 0; s < W.rank(); ++s) {
                    Element h = W.right(g, static_cast<Gen>(s));
                    if (h.length() > g.length() && seen.emplace(h.id(), true).second) next.push_back(h);
                }
            level = std::move(next);
        }
        level_start_.push_back(elements_.size());
    }

    const CoxeterSystem& system() const { return *sys_; }
    std::size_t radius() const { return radius_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<Element>& elements() const { return elements_; }
    Element operator[](std::size_t i) const { return elements_[i]; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    bool contains(Element g) const { return index_.count(g.id()) != 0; }
    std::optional<std::size_t> index_of(Element g) const {
        auto it = index_.find(g.id());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Elements of length exactly r (the sphere), r <= radius.
    std::vector<Element> sphere(std::size_t r) const {
        return {elements_.begin() + static_cast<std::ptrdiff_t>(level_start_[r]),
                elements_.begin() + static_cast<std::ptrdiff_t>(level_start_[r + 1])};
    }

private:
    const CoxeterSystem* sys_;
    std::size_t radius_;
    std::vector<Element> elements_;
    std::vector<std::size_t> level_start_;
    std::unordered_map<std::uint32_t, std::size_t> index_;
};

}  // namespace garside
