#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fitree/core.hpp"

namespace fitree {

// Plain value array plus its running-sum array, 1-based. Queries are a
// single read; updates rewrite the suffix of the sum array, O(n) worst
// case. Ground truth for the tree backends; not meant to be fast.
template <group_element T = int64_t>
class naive_prefix {
public:
    using value_type = T;

    naive_prefix() : arr_(1), pre_(1) {}
    explicit naive_prefix(uint64_t n) : arr_(n + 1), pre_(n + 1) {}
    explicit naive_prefix(std::span<const T> values)
        : arr_(values.size() + 1), pre_(values.size() + 1) {
        for (size_t i = 0; i < values.size(); ++i) arr_[i + 1] = values[i];
        rebuild_from(1);
    }

    uint64_t size() const { return arr_.size() - 1; }

    // Sum of the first x values; query(0) is the identity.
    T query(uint64_t x) const {
        if (x > size())
            throw std::out_of_range("naive_prefix::query: index past end");
        return pre_[x];
    }

    T at(uint64_t x) const {
        check_index(x);
        return arr_[x];
    }

    // Assign arr[x] = value and restore the sum recurrence.
    void update(uint64_t x, T value) {
        check_index(x);
        arr_[x] = value;
        rebuild_from(x);
    }

private:
    void check_index(uint64_t x) const {
        if (x < 1 || x > size())
            throw std::out_of_range("naive_prefix: index out of range");
    }

    void rebuild_from(uint64_t x) {
        for (uint64_t i = x; i < arr_.size(); ++i) pre_[i] = pre_[i - 1] + arr_[i];
    }

    std::vector<T> arr_, pre_;  // slot 0 holds the identity
};

}  // namespace fitree
