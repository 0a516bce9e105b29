#pragma once

#include <cstdint>
#include <vector>

namespace hornlog {

/// Disjoint sets over dense indices. Parents are kept fully compressed, so
/// `find` is a single lookup and safe to call on a const instance from
/// several threads. The smaller index always becomes the root.
class UnionFind {
public:
    std::uint32_t add() {
        auto id = static_cast<std::uint32_t>(parent_.size());
        parent_.push_back(id);
        ++roots_;
        return id;
    }

    std::uint32_t find(std::uint32_t x) const { return parent_[x]; }
    bool is_root(std::uint32_t x) const { return parent_[x] == x; }
    std::size_t size() const { return parent_.size(); }
    std::size_t root_count() const { return roots_; }

    /// Unites the classes of a and b and returns the surviving root.
    std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        if (b < a) std::swap(a, b);
        for (auto& p : parent_)
            if (p == b) p = a;
        --roots_;
        return a;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::size_t roots_ = 0;
};

}  // namespace hornlog
