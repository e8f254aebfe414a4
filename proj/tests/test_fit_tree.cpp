#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "fitree/core.hpp"
#include "fitree/fib_codec.hpp"
#include "fitree/fit_tree.hpp"
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
    fit_tree<int64_t> empty{std::span<const int64_t>{}};
    CHECK(empty.size() == 0);
    CHECK(empty.query(0) == 0);

    std::vector<int64_t> ones(11, 1);
    fit_tree<int64_t> t{std::span<const int64_t>(ones)};
    CHECK(t.lsuf_value(11) == 3);   // 11 = 8 + 3
    CHECK(t.tree_node(11) == 3);    // covers positions 9..11
}

TEST_CASE("bulk build equals n successive updates") {
    uint64_t state = 5;
    for (uint64_t n : {1ull, 2ull, 7ull, 33ull, 100ull, 610ull}) {
        std::vector<int64_t> v = random_values(n, state);
        fit_tree<int64_t> bulk{std::span<const int64_t>(v)};
        fit_tree<int64_t> incremental(n);
        for (uint64_t i = 1; i <= n; ++i) incremental.update(i, v[i - 1]);
        for (uint64_t x = 1; x <= n; ++x) {
            REQUIRE(bulk.tree_node(x) == incremental.tree_node(x));
            REQUIRE(bulk.at(x) == incremental.at(x));
        }
    }
}

TEST_CASE("query paths") {
    fit_tree<int64_t> t(1000);
    op_trace tr;

    t.query(0, &tr);
    CHECK(tr.iterations() == 0);

    t.query(11, &tr);
    CHECK(tr.visited == std::vector<uint64_t>{11, 8});

    t.query(12, &tr);
    CHECK(tr.visited == std::vector<uint64_t>{12, 11, 8});

    CHECK_THROWS_AS(t.query(1001), std::out_of_range);
}

TEST_CASE("update paths") {
    fit_tree<int64_t> t(10);
    op_trace tr;
    t.update(6, 4, &tr);
    CHECK(tr.visited == std::vector<uint64_t>{6, 7, 8});
    CHECK(t.query(10) == 4);

    CHECK_THROWS_AS(t.update(0, 1), std::out_of_range);
    CHECK_THROWS_AS(t.update(11, 1), std::out_of_range);
}

TEST_CASE("reassigning the current value leaves every node unchanged") {
    uint64_t state = 13;
    std::vector<int64_t> v = random_values(89, state);
    fit_tree<int64_t> t{std::span<const int64_t>(v)};
    std::vector<int64_t> before;
    for (uint64_t x = 1; x <= 89; ++x) before.push_back(t.tree_node(x));
    for (uint64_t x = 1; x <= 89; ++x) t.update(x, t.at(x));
    for (uint64_t x = 1; x <= 89; ++x) CHECK(t.tree_node(x) == before[x - 1]);
}

TEST_CASE("update at F(k)+1 dominates its window") {
    // Within (F(k), F(k+1)], the longest update walk starts at F(k) + 1.
    const uint64_t n = 1000;
    fit_tree<int64_t> t(n);
    op_trace tr;
    std::vector<size_t> iters(n + 1, 0);
    for (uint64_t x = 1; x <= n; ++x) {
        t.update(x, 0, &tr);
        iters[x] = tr.iterations();
    }
    const fib_table& fibs = t.fibs();
    for (size_t j = 0; j + 1 < fibs.size(); ++j) {
        uint64_t lo = fibs.value(j) + 1;
        uint64_t hi = std::min(fibs.value(j + 1), n);
        if (lo > hi) break;
        for (uint64_t x = lo; x <= hi; ++x) REQUIRE(iters[lo] >= iters[x]);
    }
}

TEST_CASE("oracle equivalence, exhaustive small sizes") {
    uint64_t state = 19;
    for (uint64_t n = 1; n <= 32; ++n) {
        std::vector<int64_t> v = random_values(n, state);
        naive_prefix<int64_t> oracle{std::span<const int64_t>(v)};
        fit_tree<int64_t> t{std::span<const int64_t>(v)};
        for (uint64_t u = 1; u <= n; ++u) {
            auto c = static_cast<int64_t>(next_rand(state) % 2001) - 1000;
            oracle.update(u, c);
            t.update(u, c);
            for (uint64_t q = 0; q <= n; ++q) REQUIRE(t.query(q) == oracle.query(q));
        }
    }
}

TEST_CASE("oracle equivalence, randomized interleaving") {
    uint64_t state = 31;
    const uint64_t n = 500;
    naive_prefix<int64_t> oracle(n);
    fit_tree<int64_t> t(n);
    for (int i = 0; i < 5000; ++i) {
        switch (next_rand(state) % 3) {
            case 0: {
                uint64_t q = next_rand(state) % (n + 1);
                REQUIRE(t.query(q) == oracle.query(q));
                break;
            }
            case 1: {
                uint64_t u = 1 + next_rand(state) % n;
                auto c = static_cast<int64_t>(next_rand(state) % 2001) - 1000;
                oracle.update(u, c);
                t.update(u, c);
                break;
            }
            default: {
                uint64_t l = 1 + next_rand(state) % n;
                uint64_t r = l + next_rand(state) % (n - l + 1);
                REQUIRE(range_sum(t, l, r) == oracle.query(r) - oracle.query(l - 1));
            }
        }
    }
}

TEST_CASE("query iterations equal the number of Zeckendorf terms") {
    fit_tree<int64_t> t(20'000);
    op_trace tr;
    for (uint64_t x = 1; x <= 20'000; ++x) {
        t.query(x, &tr);
        REQUIRE(tr.iterations() == zeckendorf(x, t.fibs()).terms.size());
    }
}

TEST_CASE("update visits exactly the covering nodes") {
    for (uint64_t n : {1ull, 2ull, 88ull, 89ull, 90ull, 144ull}) {
        fit_tree<int64_t> t(n);
        op_trace tr;
        for (uint64_t x = 1; x <= n; ++x) {
            t.update(x, 0, &tr);
            std::vector<uint64_t> covering;
            for (uint64_t y = x; y <= n; ++y)
                if (y - t.lsuf_value(y) + 1 <= x) covering.push_back(y);
            REQUIRE(tr.visited == covering);
        }
    }
}

TEST_CASE("traces are strictly monotonic") {
    fit_tree<int64_t> t(1000);
    op_trace tr;
    uint64_t state = 37;
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

TEST_CASE("range sums") {
    std::vector<int64_t> v{1, 2, 3, 4};
    fit_tree<int64_t> t{std::span<const int64_t>(v)};
    CHECK(range_sum(t, 2, 3) == 5);
    CHECK(range_sum(t, 1, 4) == 10);
    CHECK(range_sum(t, 3, 3) == 3);
    CHECK_THROWS_AS(range_sum(t, 3, 2), std::out_of_range);
    CHECK_THROWS_AS(range_sum(t, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(range_sum(t, 1, 5), std::out_of_range);

    uint64_t state = 41;
    std::vector<int64_t> big = random_values(233, state);
    naive_prefix<int64_t> oracle{std::span<const int64_t>(big)};
    fit_tree<int64_t> bt{std::span<const int64_t>(big)};
    CHECK(range_sum(bt, 1, 233) == oracle.query(233));
}

TEST_CASE("concurrent queries on a quiescent tree") {
    uint64_t state = 47;
    const uint64_t n = 50'000;
    std::vector<int64_t> v = random_values(n, state);
    naive_prefix<int64_t> oracle{std::span<const int64_t>(v)};
    fit_tree<int64_t> t{std::span<const int64_t>(v)};

    std::vector<int64_t> sums(4, 0);
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            uint64_t local = 100 + static_cast<uint64_t>(w);
            int64_t acc = 0;
            for (int i = 0; i < 20'000; ++i) acc += t.query(next_rand(local) % (n + 1));
            sums[static_cast<size_t>(w)] = acc;
        });
    }
    for (auto& w : workers) w.join();

    for (int w = 0; w < 4; ++w) {
        uint64_t local = 100 + static_cast<uint64_t>(w);
        int64_t acc = 0;
        for (int i = 0; i < 20'000; ++i) acc += oracle.query(next_rand(local) % (n + 1));
        CHECK(sums[static_cast<size_t>(w)] == acc);
    }
}
