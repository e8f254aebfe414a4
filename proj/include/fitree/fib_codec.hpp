#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fitree {

/**
 * Fibonacci numbers as used for Zeckendorf decompositions.
 *
 * The table holds [1, 2, 3, 5, 8, ...]: it starts after the duplicated 1
 * of the classical sequence, so every value appears exactly once and the
 * index of a value is unambiguous. value(j) is F(j + 2) in classical
 * indexing. Immutable after construction; concurrent reads are safe.
 */
class fib_table {
public:
    fib_table() = default;

    // Smallest table whose last entry is >= capacity. Throws
    // std::overflow_error if that entry does not fit in 64 bits and
    // std::domain_error for capacity == 0.
    static fib_table with_capacity(uint64_t capacity);

    uint64_t capacity() const { return capacity_; }
    size_t size() const { return values_.size(); }
    uint64_t value(size_t j) const { return values_[j]; }
    std::span<const uint64_t> values() const { return values_; }

    // Largest j with value(j) <= x; requires 1 <= x.
    size_t index_of_largest_leq(uint64_t x) const;

    bool contains(uint64_t f) const;

    // Index j with value(j) == f; throws std::domain_error if f is not
    // a Fibonacci number in the table.
    size_t index_of(uint64_t f) const;

    // Fibonacci number preceding f in the sequence. prefib(1) == 1: the
    // classical predecessor of F(2) is F(1) = 1, and stepping an update
    // by 1 from a position whose smallest term is 1 carries 1 + 1 = 2.
    uint64_t prefib(uint64_t f) const;

    // value(j) / value(j - 1); approaches the golden ratio as j grows.
    double phi_ratio(size_t j) const;

private:
    std::vector<uint64_t> values_;
    uint64_t capacity_ = 0;
};

// A positive integer written as a sum of non-consecutive table entries.
// `terms` holds the table indices in ascending order; it is never empty.
struct zeckendorf_rep {
    uint64_t value = 0;
    std::vector<uint32_t> terms;

    uint32_t smallest_term() const { return terms.front(); }
    size_t digit_count() const { return terms.back() + 1; }
};

// Greedy decomposition: repeatedly subtract the largest table value <= x.
// Requires 1 <= x <= t.capacity(); throws std::domain_error otherwise.
zeckendorf_rep zeckendorf(uint64_t x, const fib_table& t);

// Digit string of z: digit i is '1' iff table index i is a term. By
// default digits are emitted with place value increasing left to right;
// reversed=true mirrors the string so the most significant digit comes
// first, as in binary notation.
std::string coding_string(const zeckendorf_rep& z, bool reversed = false);

// Smallest Fibonacci value in the decomposition of x.
// Requires 1 <= x <= t.capacity().
uint64_t lsuf(uint64_t x, const fib_table& t);

// Lowest set bit of x, as a value. Requires x >= 1.
uint64_t lsub(uint64_t x);

/**
 * Dense lsuf lookup for x in [1, limit].
 *
 * Stores the table index of the smallest Zeckendorf term of every x, so
 * both lsuf and the update step prefib(lsuf(x)) are one table load. Built
 * by a linear sieve: lsuf(x) = lsuf(x - f) where f is the largest table
 * value <= x, with lsuf(f) = f itself.
 */
class lsuf_table {
public:
    lsuf_table() = default;
    lsuf_table(uint64_t limit, const fib_table& t);

    uint64_t limit() const { return idx_.empty() ? 0 : idx_.size() - 1; }
    uint8_t term_index(uint64_t x) const { return idx_[x]; }

private:
    std::vector<uint8_t> idx_;
};

}  // namespace fitree
