#include "fitree/fib_codec.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fitree {

fib_table fib_table::with_capacity(uint64_t capacity) {
    if (capacity == 0)
        throw std::domain_error("fib_table: capacity must be >= 1");
    fib_table t;
    t.capacity_ = capacity;
    t.values_ = {1};
    while (t.values_.back() < capacity) {
        uint64_t next;
        if (t.values_.size() == 1) {
            next = 2;
        } else {
            uint64_t a = t.values_[t.values_.size() - 2];
            uint64_t b = t.values_.back();
            if (b > std::numeric_limits<uint64_t>::max() - a)
                throw std::overflow_error(
                    "fib_table: capacity not reachable within 64 bits");
            next = a + b;
        }
        t.values_.push_back(next);
    }
    return t;
}

size_t fib_table::index_of_largest_leq(uint64_t x) const {
    if (x == 0 || values_.empty() || x < values_.front())
        throw std::domain_error("fib_table: no table value <= x");
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<size_t>(it - values_.begin()) - 1;
}

bool fib_table::contains(uint64_t f) const {
    return std::binary_search(values_.begin(), values_.end(), f);
}

size_t fib_table::index_of(uint64_t f) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), f);
    if (it == values_.end() || *it != f)
        throw std::domain_error("fib_table: not a Fibonacci number in the table");
    return static_cast<size_t>(it - values_.begin());
}

uint64_t fib_table::prefib(uint64_t f) const {
    size_t j = index_of(f);
    return j == 0 ? values_[0] : values_[j - 1];
}

double fib_table::phi_ratio(size_t j) const {
    if (j == 0)
        throw std::domain_error("fib_table::phi_ratio: needs j >= 1");
    if (j >= values_.size())
        throw std::out_of_range("fib_table::phi_ratio: index past table end");
    return static_cast<double>(values_[j]) / static_cast<double>(values_[j - 1]);
}

zeckendorf_rep zeckendorf(uint64_t x, const fib_table& t) {
    if (x == 0 || x > t.capacity())
        throw std::domain_error("zeckendorf: x must be in [1, capacity]");
    zeckendorf_rep z;
    z.value = x;
    size_t j = t.index_of_largest_leq(x);
    uint64_t rest = x;
    for (;;) {
        while (t.value(j) > rest) --j;
        z.terms.push_back(static_cast<uint32_t>(j));
        rest -= t.value(j);
        if (rest == 0) break;
        // rest < value(j - 1) now, so the next term index drops by >= 2
        // and the chosen indices can never be adjacent.
    }
    std::reverse(z.terms.begin(), z.terms.end());
    return z;
}

std::string coding_string(const zeckendorf_rep& z, bool reversed) {
    if (z.terms.empty())
        throw std::domain_error("coding_string: empty representation");
    std::string s(z.terms.back() + 1, '0');
    for (uint32_t j : z.terms) s[j] = '1';
    if (reversed) std::reverse(s.begin(), s.end());
    return s;
}

uint64_t lsuf(uint64_t x, const fib_table& t) {
    if (x == 0 || x > t.capacity())
        throw std::domain_error("lsuf: x must be in [1, capacity]");
    size_t j = t.index_of_largest_leq(x);
    uint64_t rest = x;
    for (;;) {
        while (t.value(j) > rest) --j;
        rest -= t.value(j);
        if (rest == 0) return t.value(j);
    }
}

uint64_t lsub(uint64_t x) {
    if (x == 0)
        throw std::domain_error("lsub: x must be >= 1");
    return x & (~x + 1);
}

lsuf_table::lsuf_table(uint64_t limit, const fib_table& t) {
    if (limit > t.capacity())
        throw std::domain_error("lsuf_table: limit exceeds table capacity");
    idx_.assign(limit + 1, 0);
    if (limit == 0) return;
    size_t k = 0;  // largest index with t.value(k) <= x
    for (uint64_t x = 1; x <= limit; ++x) {
        if (k + 1 < t.size() && t.value(k + 1) <= x) ++k;
        uint64_t f = t.value(k);
        idx_[x] = (f == x) ? static_cast<uint8_t>(k) : idx_[x - f];
    }
}

}  // namespace fitree
