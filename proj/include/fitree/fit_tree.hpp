#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fitree/core.hpp"
#include "fitree/fib_codec.hpp"

namespace fitree {

/**
 * Fibonacci indexed tree, 1-based.
 *
 * Same shape as a Fenwick tree but the covered ranges come from the
 * Zeckendorf decomposition: node x stores the sum of positions
 * [x - lsuf(x) + 1, x] where lsuf is the smallest Fibonacci value in
 * x's decomposition. A query at x therefore runs one iteration per
 * Zeckendorf term of x: at most one per two digits, which is what buys
 * the smaller query constant. Updates step by prefib(lsuf(x)): the added
 * value carries the smallest term into the next Fibonacci number, moving
 * to the next node whose range covers the updated position.
 *
 * The tree owns a Fibonacci table sized to its capacity and a dense
 * per-index lsuf table (one byte per slot, the term index), so each loop
 * step costs a table load, symmetric with the BIT's bit trick.
 *
 * Concurrency contract matches bit_tree: any number of concurrent
 * queries, or one exclusive update.
 */
template <group_element T = int64_t>
class fit_tree {
public:
    using value_type = T;

    fit_tree() : fit_tree(uint64_t{0}) {}

    // n zero-valued slots.
    explicit fit_tree(uint64_t n)
        : fib_(fib_table::with_capacity(std::max<uint64_t>(n, 1))),
          lsuf_(n, fib_),
          tree_(n + 1),
          mirror_(n + 1) {}

    // O(n) construction from initial values via their running sums.
    explicit fit_tree(std::span<const T> values) : fit_tree(uint64_t{values.size()}) {
        std::vector<T> pre(values.size() + 1);
        for (size_t i = 1; i <= values.size(); ++i) {
            mirror_[i] = values[i - 1];
            pre[i] = pre[i - 1] + values[i - 1];
        }
        for (uint64_t x = 1; x <= size(); ++x)
            tree_[x] = pre[x] - pre[x - lsuf_step(x)];
    }

    uint64_t size() const { return tree_.size() - 1; }

    const fib_table& fibs() const { return fib_; }

    // Prefix sum of positions [1, x]; query(0) is the identity.
    T query(uint64_t x, op_trace* trace = nullptr) const {
        if (x > size())
            throw std::out_of_range("fit_tree::query: index past end");
        if (trace) trace->reset();
        T sum{};
        while (x > 0) {
            if (trace) trace->visited.push_back(x);
            sum += tree_[x];
            x -= lsuf_step(x);
        }
        return sum;
    }

    // Assign value at position x. Visits exactly the nodes whose range
    // covers x; walks even for an identity delta (see bit_tree::update).
    void update(uint64_t x, T value, op_trace* trace = nullptr) {
        check_position(x);
        if (trace) trace->reset();
        T delta = value - mirror_[x];
        mirror_[x] = value;
        const uint64_t n = size();
        while (x <= n) {
            if (trace) trace->visited.push_back(x);
            tree_[x] += delta;
            x += prefib_step(x);
        }
    }

    // Current value at position x.
    T at(uint64_t x) const {
        check_position(x);
        return mirror_[x];
    }

    // lsuf(x) served from the dense table.
    uint64_t lsuf_value(uint64_t x) const {
        check_position(x);
        return lsuf_step(x);
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
    uint64_t lsuf_step(uint64_t x) const { return fib_.value(lsuf_.term_index(x)); }

    // prefib(lsuf(x)) from the stored term index, no value search.
    uint64_t prefib_step(uint64_t x) const {
        uint8_t j = lsuf_.term_index(x);
        return j == 0 ? 1 : fib_.value(j - 1);
    }

    void check_position(uint64_t x) const {
        if (x < 1 || x > size())
            throw std::out_of_range("fit_tree: index out of range");
    }

    fib_table fib_;
    lsuf_table lsuf_;
    std::vector<T> tree_, mirror_;  // 1-based; slot 0 unused
};

}  // namespace fitree
