#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fitree {

// Value domain shared by all backends: commutative addition with T{} as
// the identity and subtraction as its inverse. Updates assign a new value
// to a position, so the inverse is required (delta = new - old).
template <typename T>
concept group_element = std::regular<T> && requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    a += b;
    a -= b;
};

// Node-visit record of a single query or update. `visited` holds every
// index the loop touched, in visit order (decreasing for queries,
// increasing for updates); the iteration count of the operation equals
// the number of visits.
struct op_trace {
    std::vector<uint64_t> visited;

    void reset() { visited.clear(); }
    size_t iterations() const { return visited.size(); }
};

// Sum over [l, r], computed as query(r) - query(l - 1). Exactly two
// prefix queries on any backend.
template <typename Tree>
typename Tree::value_type range_sum(const Tree& t, uint64_t l, uint64_t r) {
    if (l < 1 || l > r || r > t.size())
        throw std::out_of_range("range_sum: need 1 <= l <= r <= size");
    return t.query(r) - t.query(l - 1);
}

// Instrumented variant: `upper` and `lower` receive the traces of the
// query(r) and query(l - 1) calls.
template <typename Tree>
typename Tree::value_type range_sum(const Tree& t, uint64_t l, uint64_t r,
                                    op_trace& upper, op_trace& lower) {
    if (l < 1 || l > r || r > t.size())
        throw std::out_of_range("range_sum: need 1 <= l <= r <= size");
    return t.query(r, &upper) - t.query(l - 1, &lower);
}

}  // namespace fitree
