#include "fitree/workload.hpp"

#include <chrono>
#include <stdexcept>

#include "fitree/bit_tree.hpp"
#include "fitree/core.hpp"
#include "fitree/fit_tree.hpp"
#include "fitree/naive_prefix.hpp"

namespace fitree {

namespace {

// splitmix64: tiny, seedable, identical everywhere.
uint64_t next_rand(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in [0, bound); rejection from the top avoids modulo bias.
uint64_t bounded(uint64_t& state, uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next_rand(state);
        if (r >= threshold) return r % bound;
    }
}

int64_t uniform_value(uint64_t& state) {
    return static_cast<int64_t>(bounded(state, 2'000'001)) - 1'000'000;
}

constexpr uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr uint64_t kFnvPrime = 1099511628211ULL;

void fold_result(uint64_t& digest, int64_t v) {
    digest = (digest ^ static_cast<uint64_t>(v)) * kFnvPrime;
}

struct replay_totals {
    uint64_t iterations = 0;
    uint64_t digest = kFnvOffset;
};

template <typename Tree>
replay_totals replay_traced(const workload& w, Tree& t) {
    replay_totals out;
    op_trace tr, tr2;
    for (const workload_op& op : w.ops) {
        switch (op.kind) {
            case op_kind::query: {
                int64_t v = t.query(op.x, &tr);
                out.iterations += tr.iterations();
                fold_result(out.digest, v);
                break;
            }
            case op_kind::update:
                t.update(op.x, op.value, &tr);
                out.iterations += tr.iterations();
                break;
            case op_kind::range_sum: {
                int64_t v = range_sum(t, op.x, op.r, tr, tr2);
                out.iterations += tr.iterations() + tr2.iterations();
                fold_result(out.digest, v);
                break;
            }
        }
    }
    return out;
}

replay_totals replay_naive(const workload& w, naive_prefix<int64_t>& t) {
    replay_totals out;
    const uint64_t n = t.size();
    for (const workload_op& op : w.ops) {
        switch (op.kind) {
            case op_kind::query:
                fold_result(out.digest, t.query(op.x));
                out.iterations += 1;
                break;
            case op_kind::update:
                t.update(op.x, op.value);
                out.iterations += n - op.x + 1;
                break;
            case op_kind::range_sum:
                fold_result(out.digest, range_sum(t, op.x, op.r));
                out.iterations += 2;
                break;
        }
    }
    return out;
}

}  // namespace

std::string workload_mix::to_string() const {
    return "q:u:r=" + std::to_string(queries) + ":" + std::to_string(updates) +
           ":" + std::to_string(range_sums);
}

workload make_workload(uint64_t n, size_t count, workload_mix mix, uint64_t seed) {
    if (n < 1)
        throw std::domain_error("make_workload: n must be >= 1");
    const uint64_t total = uint64_t{mix.queries} + mix.updates + mix.range_sums;
    if (total == 0)
        throw std::domain_error("make_workload: mix weights are all zero");

    workload w;
    w.n = n;
    w.seed = seed;
    w.mix = mix;
    w.ops.reserve(count);

    uint64_t state = seed;
    for (size_t i = 0; i < count; ++i) {
        workload_op op;
        uint64_t roll = bounded(state, total);
        if (roll < mix.queries) {
            op.kind = op_kind::query;
            op.x = bounded(state, n + 1);  // queries may use 0
        } else if (roll < uint64_t{mix.queries} + mix.updates) {
            op.kind = op_kind::update;
            op.x = 1 + bounded(state, n);
            op.value = uniform_value(state);
        } else {
            op.kind = op_kind::range_sum;
            op.x = 1 + bounded(state, n);
            op.r = op.x + bounded(state, n - op.x + 1);
        }
        w.ops.push_back(op);
    }
    return w;
}

const char* backend_name(backend_kind b) {
    switch (b) {
        case backend_kind::naive: return "naive";
        case backend_kind::bit: return "bit";
        case backend_kind::fit: return "fit";
    }
    return "?";
}

workload_result run_workload(const workload& w, backend_kind b) {
    workload_result res;
    res.backend = b;
    res.op_count = w.ops.size();

    const auto start = std::chrono::steady_clock::now();
    replay_totals totals;
    switch (b) {
        case backend_kind::naive: {
            naive_prefix<int64_t> t(w.n);
            totals = replay_naive(w, t);
            break;
        }
        case backend_kind::bit: {
            bit_tree<int64_t> t(w.n);
            totals = replay_traced(w, t);
            break;
        }
        case backend_kind::fit: {
            fit_tree<int64_t> t(w.n);
            totals = replay_traced(w, t);
            break;
        }
    }
    const auto stop = std::chrono::steady_clock::now();

    res.total_iterations = totals.iterations;
    res.result_digest = totals.digest;
    res.wall_seconds = std::chrono::duration<double>(stop - start).count();
    return res;
}

}  // namespace fitree
