#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fitree/core.hpp"

namespace fitree {

/**
 * Binary indexed tree (Fenwick tree), 1-based.
 *
 * Node x stores the sum of the lsub(x) values ending at x, i.e. of
 * positions [x - lsub(x) + 1, x] where lsub is the lowest set bit.
 * Queries clear the lowest set bit per step, so a query at x runs
 * popcount(x) iterations; updates add it.
 *
 * The current values are mirrored inside the structure so an update can
 * compute its delta without an external array. Concurrent queries are
 * safe while no update is in flight; the caller owns the locking.
 */
template <group_element T = int64_t>
class bit_tree {
public:
    using value_type = T;

    bit_tree() : tree_(1), mirror_(1) {}

    // n zero-valued slots.
    explicit bit_tree(uint64_t n) : tree_(n + 1), mirror_(n + 1) {}

    // O(n) construction from initial values via their running sums.
    explicit bit_tree(std::span<const T> values)
        : tree_(values.size() + 1), mirror_(values.size() + 1) {
        std::vector<T> pre(values.size() + 1);
        for (size_t i = 1; i <= values.size(); ++i) {
            mirror_[i] = values[i - 1];
            pre[i] = pre[i - 1] + values[i - 1];
        }
        for (uint64_t x = 1; x <= size(); ++x)
            tree_[x] = pre[x] - pre[x - lowest_bit(x)];
    }

    uint64_t size() const { return tree_.size() - 1; }

    // Prefix sum of positions [1, x]; query(0) is the identity. When
    // `trace` is given it is reset and receives every visited index.
    T query(uint64_t x, op_trace* trace = nullptr) const {
        if (x > size())
            throw std::out_of_range("bit_tree::query: index past end");
        if (trace) trace->reset();
        T sum{};
        while (x > 0) {
            if (trace) trace->visited.push_back(x);
            sum += tree_[x];
            x -= lowest_bit(x);
        }
        return sum;
    }

    // Assign value at position x; every node whose range covers x gets
    // the delta. The walk happens even when the delta is the identity,
    // so traced iteration counts depend only on the index structure.
    void update(uint64_t x, T value, op_trace* trace = nullptr) {
        check_position(x);
        if (trace) trace->reset();
        T delta = value - mirror_[x];
        mirror_[x] = value;
        const uint64_t n = size();
        while (x <= n) {
            if (trace) trace->visited.push_back(x);
            tree_[x] += delta;
            x += lowest_bit(x);
        }
    }

    // Current value at position x.
    T at(uint64_t x) const {
        check_position(x);
        return mirror_[x];
    }

    // Raw node, for structural checks.
    T tree_node(uint64_t x) const {
        check_position(x);
        return tree_[x];
    }

    // Test hook: overwrite a raw node, bypassing the range invariant.
    void poke_node(uint64_t x, T v) {
        check_position(x);
        tree_[x] = v;
    }

private:
    static constexpr uint64_t lowest_bit(uint64_t x) { return x & (~x + 1); }

    void check_position(uint64_t x) const {
        if (x < 1 || x > size())
            throw std::out_of_range("bit_tree: index out of range");
    }

    std::vector<T> tree_, mirror_;  // 1-based; slot 0 unused
};

}  // namespace fitree
