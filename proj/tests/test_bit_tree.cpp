#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "fitree/bit_tree.hpp"
#include "fitree/core.hpp"
#include "fitree/fib_codec.hpp"
#include "fitree/naive_prefix.hpp"

using namespace fitree;

namespace {

uint64_t next_rand(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<int64_t> random_values(uint64_t n, uint64_t& state) {
    std::vector<int64_t> v(n);
    for (auto& e : v) e = static_cast<int64_t>(next_rand(state) % 2001) - 1000;
    return v;
}

}  // namespace

TEST_CASE("construction") {
    bit_tree<int64_t> empty{std::span<const int64_t>{}};
    CHECK(empty.size() == 0);
    CHECK(empty.query(0) == 0);

    std::vector<int64_t> ones{1, 1, 1, 1};
    bit_tree<int64_t> t{std::span<const int64_t>(ones)};
    CHECK(t.tree_node(1) == 1);
    CHECK(t.tree_node(2) == 2);
    CHECK(t.tree_node(3) == 1);
    CHECK(t.tree_node(4) == 4);
}

TEST_CASE("bulk build equals n successive updates") {
    uint64_t state = 11;
    for (uint64_t n : {1ull, 2ull, 7ull, 32ull, 100ull, 513ull}) {
        std::vector<int64_t> v = random_values(n, state);
        bit_tree<int64_t> bulk{std::span<const int64_t>(v)};
        bit_tree<int64_t> incremental(n);
        for (uint64_t i = 1; i <= n; ++i) incremental.update(i, v[i - 1]);
        for (uint64_t x = 1; x <= n; ++x) {
            REQUIRE(bulk.tree_node(x) == incremental.tree_node(x));
            REQUIRE(bulk.at(x) == incremental.at(x));
        }
    }
}

TEST_CASE("query paths") {
    bit_tree<int64_t> t(4096);
    op_trace tr;

    t.query(0, &tr);
    CHECK(tr.iterations() == 0);

    t.query(12, &tr);
    CHECK(tr.visited == std::vector<uint64_t>{12, 8});

    for (uint32_t k = 1; k <= 12; ++k) {
        t.query((uint64_t{1} << k) - 1, &tr);
        CHECK(tr.iterations() == k);
    }

    CHECK_THROWS_AS(t.query(4097), std::out_of_range);
}

TEST_CASE("update paths") {
    bit_tree<int64_t> t(8);
    op_trace tr;
    t.update(8, 3, &tr);  // n = 2^k: the first jump already leaves the tree
    CHECK(tr.visited == std::vector<uint64_t>{8});
    CHECK(t.query(8) == 3);

    CHECK_THROWS_AS(t.update(0, 1), std::out_of_range);
    volatile uint64_t past_end = 9;  // opaque: keeps -Warray-bounds quiet
    CHECK_THROWS_AS(t.update(past_end, 1), std::out_of_range);
}

TEST_CASE("reassigning the current value leaves every node unchanged") {
    uint64_t state = 3;
    std::vector<int64_t> v = random_values(64, state);
    bit_tree<int64_t> t{std::span<const int64_t>(v)};
    std::vector<int64_t> before;
    for (uint64_t x = 1; x <= 64; ++x) before.push_back(t.tree_node(x));
    for (uint64_t x = 1; x <= 64; ++x) t.update(x, t.at(x));
    for (uint64_t x = 1; x <= 64; ++x) CHECK(t.tree_node(x) == before[x - 1]);
}

TEST_CASE("oracle equivalence, exhaustive small sizes") {
    uint64_t state = 17;
    for (uint64_t n = 1; n <= 32; ++n) {
        std::vector<int64_t> v = random_values(n, state);
        naive_prefix<int64_t> oracle{std::span<const int64_t>(v)};
        bit_tree<int64_t> t{std::span<const int64_t>(v)};
        for (uint64_t u = 1; u <= n; ++u) {
            auto c = static_cast<int64_t>(next_rand(state) % 2001) - 1000;
            oracle.update(u, c);
            t.update(u, c);
            for (uint64_t q = 0; q <= n; ++q) REQUIRE(t.query(q) == oracle.query(q));
        }
    }
}

TEST_CASE("iteration law: query work equals popcount") {
    bit_tree<int64_t> t(20'000);
    op_trace tr;
    for (uint64_t x = 1; x <= 20'000; ++x) {
        t.query(x, &tr);
        REQUIRE(tr.iterations() == static_cast<size_t>(std::popcount(x)));
    }
}

TEST_CASE("update visits exactly the covering nodes") {
    for (uint64_t n : {1ull, 2ull, 63ull, 64ull, 128ull}) {
        bit_tree<int64_t> t(n);
        op_trace tr;
        for (uint64_t x = 1; x <= n; ++x) {
            t.update(x, 0, &tr);
            std::vector<uint64_t> covering;
            for (uint64_t y = x; y <= n; ++y)
                if (y - lsub(y) + 1 <= x) covering.push_back(y);
            REQUIRE(tr.visited == covering);
        }
    }
}

TEST_CASE("traces are strictly monotonic") {
    bit_tree<int64_t> t(1000);
    op_trace tr;
    uint64_t state = 23;
    for (int i = 0; i < 200; ++i) {
        uint64_t x = 1 + next_rand(state) % 1000;
        t.query(x, &tr);
        CHECK(std::is_sorted(tr.visited.rbegin(), tr.visited.rend()));
        t.update(x, 1, &tr);
        CHECK(std::is_sorted(tr.visited.begin(), tr.visited.end()));
        CHECK(std::adjacent_find(tr.visited.begin(), tr.visited.end()) ==
              tr.visited.end());
    }
}

TEST_CASE("range sums match the oracle") {
    uint64_t state = 29;
    std::vector<int64_t> v = random_values(128, state);
    naive_prefix<int64_t> oracle{std::span<const int64_t>(v)};
    bit_tree<int64_t> t{std::span<const int64_t>(v)};
    for (uint64_t l = 1; l <= 128; ++l)
        for (uint64_t r = l; r <= 128; ++r)
            REQUIRE(range_sum(t, l, r) == oracle.query(r) - oracle.query(l - 1));
}
