#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fitree/bit_tree.hpp"
#include "fitree/fit_tree.hpp"
#include "fitree/workload.hpp"

namespace fitree {

struct check_result {
    std::string name;
    bool passed = true;
    std::string detail;  // empty on pass; minimal counterexample otherwise
};

struct verify_report {
    std::vector<check_result> checks;

    bool all_passed() const;
    size_t failed_count() const;
};

// Structural node-range invariant: every tree[x] equals the sum of the
// mirrored values it covers, [x - lsub(x) + 1, x] resp. [x - lsuf(x) + 1, x].
check_result check_bit_node_ranges(const bit_tree<int64_t>& t);
check_result check_fit_node_ranges(const fit_tree<int64_t>& t);

// Replays ops on naive, bit and fit backends in lockstep and reports the
// first query/range disagreement, if any.
std::optional<std::string> lockstep_mismatch(uint64_t n,
                                             std::span<const workload_op> ops);

// Greedy removal of op chunks (halves, then smaller) while `still_fails`
// keeps returning true; used to minimize failure reports.
std::vector<workload_op> shrink_ops(
    std::vector<workload_op> ops,
    const std::function<bool(std::span<const workload_op>)>& still_fails);

// Minimal (n, ops) pair that still reproduces a lockstep mismatch.
std::pair<uint64_t, std::vector<workload_op>> shrink_failure(
    uint64_t n, std::vector<workload_op> ops);

// The full invariant suite (codec, binary tree, Fibonacci tree) at the
// given scale. Exhaustive sub-checks are capped internally at their
// tractable sizes; randomized ones scale with n.
verify_report run_verify_suite(uint64_t n, uint64_t seed);

}  // namespace fitree
