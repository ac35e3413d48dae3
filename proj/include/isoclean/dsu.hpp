// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace isoclean {

// Disjoint-set forest over a fixed universe of n slots. Slots start out
// absent; make_set brings a slot to life as a singleton. Union by size with
// iterative path compression.
class DisjointSetForest {
public:
    using Index = std::uint32_t;
    static constexpr Index kAbsent = 0xFFFFFFFFu;

    explicit DisjointSetForest(std::size_t n)
        : parent_(n, kAbsent), size_(n, 0), live_(0) {
        if (n >= kAbsent)
            throw std::length_error("DisjointSetForest: universe too large");
    }

    std::size_t capacity() const { return parent_.size(); }
    std::size_t live_count() const { return live_; }
    bool live(Index v) const { return parent_[v] != kAbsent; }

    void make_set(Index v) {
        if (parent_[v] != kAbsent)
            throw std::logic_error("DisjointSetForest: make_set on a live slot");
        parent_[v] = v;
        size_[v] = 1;
        ++live_;
    }

    Index find(Index v) {
        Index root = parent_[v];
        if (root == kAbsent)
            throw std::logic_error("DisjointSetForest: find on an absent slot");
        while (parent_[root] != root) root = parent_[root];
        while (parent_[v] != root) {
            const Index next = parent_[v];
            parent_[v] = root;
            v = next;
        }
        return root;
    }

    // Merges the sets holding a and b; returns the surviving root.
    Index unite(Index a, Index b) {
        Index ra = find(a);
        Index rb = find(b);
        if (ra == rb) return ra;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        return ra;
    }

    // Size of the set holding v.
    std::uint64_t set_size(Index v) { return size_[find(v)]; }

    // Parent-chain length from v to its root, before compression would
    // shorten it. Diagnostic only.
    std::size_t chase_length(Index v) const {
        std::size_t hops = 0;
        while (parent_[v] != v) {
            v = parent_[v];
            ++hops;
        }
        return hops;
    }

private:
    std::vector<Index> parent_;
    std::vector<std::uint64_t> size_;
    std::size_t live_;
};

}  // namespace isoclean
