#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fitree {

enum class op_kind : uint8_t { query, update, range_sum };

struct workload_op {
    op_kind kind = op_kind::query;
    uint64_t x = 0;     // query index / update position / range lower bound
    uint64_t r = 0;     // range upper bound
    int64_t value = 0;  // update payload

    bool operator==(const workload_op&) const = default;
};

// Relative frequencies of the three op kinds.
struct workload_mix {
    unsigned queries = 1;
    unsigned updates = 1;
    unsigned range_sums = 0;

    std::string to_string() const;
};

struct workload {
    uint64_t n = 0;
    uint64_t seed = 0;
    workload_mix mix;
    std::vector<workload_op> ops;
};

// Deterministic: the same (n, count, mix, seed) always yields the same
// ops, independent of platform. Query indices are uniform in [0, n],
// update/range indices in [1, n], update values uniform in
// [-1'000'000, 1'000'000] so sums stay far from 64-bit limits.
workload make_workload(uint64_t n, size_t count, workload_mix mix, uint64_t seed);

enum class backend_kind : uint8_t { naive, bit, fit };

const char* backend_name(backend_kind b);

struct workload_result {
    backend_kind backend = backend_kind::naive;
    size_t op_count = 0;
    uint64_t total_iterations = 0;
    double wall_seconds = 0.0;
    // Order-sensitive 64-bit fold of every query/range result. Equal
    // across backends for the same workload; iterations and time differ.
    uint64_t result_digest = 0;
};

// Replays w on a fresh zero-initialized backend of the given kind.
// Iteration counting: bit/fit count loop steps from their traces; the
// naive backend counts one step per sum-array touch (1 per query, 2 per
// range sum, n - x + 1 per update at x).
workload_result run_workload(const workload& w, backend_kind b);

}  // namespace fitree
