#include "fitree/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "fitree/core.hpp"
#include "fitree/fib_codec.hpp"
#include "fitree/naive_prefix.hpp"

namespace fitree {

namespace {

uint64_t next_rand(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int64_t rand_value(uint64_t& state) {
    return static_cast<int64_t>(next_rand(state) % 2'000'001) - 1'000'000;
}

std::string describe_op(const workload_op& op) {
    std::ostringstream os;
    switch (op.kind) {
        case op_kind::query: os << "query(" << op.x << ")"; break;
        case op_kind::update: os << "update(" << op.x << ", " << op.value << ")"; break;
        case op_kind::range_sum: os << "range(" << op.x << ", " << op.r << ")"; break;
    }
    return os.str();
}

std::string describe_ops(std::span<const workload_op> ops, size_t cap = 24) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < ops.size() && i < cap; ++i) {
        if (i) os << ", ";
        os << describe_op(ops[i]);
    }
    if (ops.size() > cap) os << ", ... (" << ops.size() << " total)";
    os << "]";
    return os.str();
}

check_result pass(std::string name) { return {std::move(name), true, ""}; }

check_result fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

// --- codec oracles ------------------------------------------------------

// Largest power of two dividing x, by repeated division.
uint64_t lsub_loop_oracle(uint64_t x) {
    uint64_t p = 1;
    while (x % (p * 2) == 0) p *= 2;
    return p;
}

// counts[s] += 1 for every non-empty subset of pairwise non-consecutive
// table indices whose values sum to s <= limit.
void enumerate_subset_sums(const fib_table& t, uint64_t limit,
                           std::vector<uint32_t>& counts, size_t start,
                           uint64_t sum) {
    for (size_t j = start; j < t.size(); ++j) {
        uint64_t s2 = sum + t.value(j);
        if (s2 > limit) break;
        ++counts[s2];
        enumerate_subset_sums(t, limit, counts, j + 2, s2);
    }
}

check_result check_fib_recurrence(uint64_t capacity) {
    const char* name = "fib table recurrence";
    fib_table t = fib_table::with_capacity(capacity);
    if (t.value(0) != 1)
        return fail(name, "values[0] != 1");
    if (t.size() > 1 && t.value(1) != 2)
        return fail(name, "values[1] != 2");
    for (size_t j = 2; j < t.size(); ++j) {
        if (t.value(j) != t.value(j - 1) + t.value(j - 2)) {
            std::ostringstream os;
            os << "recurrence broken at index " << j;
            return fail(name, os.str());
        }
    }
    for (size_t j = 1; j < t.size(); ++j)
        if (t.value(j) <= t.value(j - 1))
            return fail(name, "values not strictly increasing");
    if (t.values().back() < capacity)
        return fail(name, "last value below capacity");
    return pass(name);
}

check_result check_zeckendorf_roundtrip(const fib_table& t, uint64_t limit) {
    const char* name = "zeckendorf round trip";
    for (uint64_t x = 1; x <= limit; ++x) {
        zeckendorf_rep z = zeckendorf(x, t);
        uint64_t sum = 0;
        for (uint32_t j : z.terms) sum += t.value(j);
        if (sum != x) {
            std::ostringstream os;
            os << "terms of " << x << " sum to " << sum;
            return fail(name, os.str());
        }
        for (size_t i = 1; i < z.terms.size(); ++i) {
            if (z.terms[i] == z.terms[i - 1] + 1) {
                std::ostringstream os;
                os << "adjacent terms " << z.terms[i - 1] << "," << z.terms[i]
                   << " for x=" << x;
                return fail(name, os.str());
            }
        }
    }
    return pass(name);
}

check_result check_zeckendorf_uniqueness(const fib_table& t, uint64_t limit) {
    const char* name = "zeckendorf uniqueness";
    std::vector<uint32_t> counts(limit + 1, 0);
    enumerate_subset_sums(t, limit, counts, 0, 0);
    for (uint64_t x = 1; x <= limit; ++x) {
        if (counts[x] != 1) {
            std::ostringstream os;
            os << counts[x] << " non-consecutive subsets sum to " << x;
            return fail(name, os.str());
        }
    }
    return pass(name);
}

check_result check_coding_bounds(const fib_table& t, uint64_t limit) {
    const char* name = "coding digit bounds";
    const double log_phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    for (uint64_t x = 1; x <= limit; ++x) {
        zeckendorf_rep z = zeckendorf(x, t);
        const size_t digits = z.digit_count();
        const auto bound = static_cast<size_t>(
            std::ceil(std::log(static_cast<double>(x) * std::sqrt(5.0) + 1.0) / log_phi));
        if (digits > bound) {
            std::ostringstream os;
            os << "x=" << x << " has " << digits << " digits, bound " << bound;
            return fail(name, os.str());
        }
        if (z.terms.size() > (digits + 1) / 2) {
            std::ostringstream os;
            os << "x=" << x << " has " << z.terms.size() << " ones in " << digits
               << " digits";
            return fail(name, os.str());
        }
    }
    return pass(name);
}

check_result check_lsub_oracle(uint64_t limit) {
    const char* name = "lsub oracle";
    for (uint64_t x = 1; x <= limit; ++x) {
        if (lsub(x) != lsub_loop_oracle(x)) {
            std::ostringstream os;
            os << "lsub(" << x << ") = " << lsub(x) << ", oracle "
               << lsub_loop_oracle(x);
            return fail(name, os.str());
        }
    }
    return pass(name);
}

check_result check_lsuf_table(const fib_table& t, uint64_t limit) {
    const char* name = "lsuf table vs greedy";
    lsuf_table dense(limit, t);
    for (uint64_t x = 1; x <= limit; ++x) {
        uint64_t from_table = t.value(dense.term_index(x));
        uint64_t from_greedy = lsuf(x, t);
        if (from_table != from_greedy) {
            std::ostringstream os;
            os << "x=" << x << ": table " << from_table << ", greedy "
               << from_greedy;
            return fail(name, os.str());
        }
    }
    return pass(name);
}

check_result check_phi_convergence() {
    const char* name = "phi ratio convergence";
    // F(42)/F(41) needs 41 table entries; build past that regardless of scale.
    fib_table t = fib_table::with_capacity(300'000'000);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double err = std::abs(t.phi_ratio(40) - phi);
    if (err >= 1e-12) {
        std::ostringstream os;
        os << "ratio error " << err;
        return fail(name, os.str());
    }
    return pass(name);
}

// --- tree oracles -------------------------------------------------------

template <typename Tree>
check_result exhaustive_equivalence(const char* name, uint64_t n_max,
                                    uint64_t seed) {
    uint64_t state = seed;
    for (uint64_t n = 1; n <= n_max; ++n) {
        std::vector<int64_t> base(n);
        for (auto& v : base) v = rand_value(state);
        naive_prefix<int64_t> oracle{std::span<const int64_t>(base)};
        Tree tree{std::span<const int64_t>(base)};

        auto compare_all = [&](const char* stage, uint64_t u) -> std::optional<std::string> {
            for (uint64_t q = 0; q <= n; ++q) {
                if (tree.query(q) != oracle.query(q)) {
                    std::ostringstream os;
                    os << "n=" << n << " " << stage << " update_pos=" << u
                       << " query(" << q << "): tree " << tree.query(q)
                       << ", oracle " << oracle.query(q);
                    return os.str();
                }
            }
            return std::nullopt;
        };

        if (auto err = compare_all("after build", 0)) return fail(name, *err);
        for (uint64_t u = 1; u <= n; ++u) {
            int64_t c = rand_value(state);
            oracle.update(u, c);
            tree.update(u, c);
            if (auto err = compare_all("after", u)) return fail(name, *err);
        }
        for (uint64_t l = 1; l <= n; ++l) {
            for (uint64_t r = l; r <= n; ++r) {
                int64_t want = oracle.query(r) - oracle.query(l - 1);
                if (range_sum(tree, l, r) != want) {
                    std::ostringstream os;
                    os << "n=" << n << " range(" << l << "," << r << ") mismatch";
                    return fail(name, os.str());
                }
            }
        }
    }
    return pass(name);
}

check_result randomized_equivalence(uint64_t n, size_t op_count, uint64_t seed) {
    const char* name = "randomized interleaved equivalence";
    workload w = make_workload(n, op_count, {2, 2, 1}, seed);
    auto mismatch = lockstep_mismatch(n, w.ops);
    if (!mismatch) return pass(name);

    auto [min_n, min_ops] = shrink_failure(n, std::move(w.ops));
    std::ostringstream os;
    os << *mismatch << "; minimal: n=" << min_n << " ops=" << describe_ops(min_ops);
    return fail(name, os.str());
}

check_result bit_fit_agreement(uint64_t n, size_t op_count, uint64_t seed) {
    const char* name = "bit/fit agreement at full scale";
    workload w = make_workload(n, op_count, {2, 2, 1}, seed);
    workload_result a = run_workload(w, backend_kind::bit);
    workload_result b = run_workload(w, backend_kind::fit);
    if (a.result_digest != b.result_digest) {
        std::ostringstream os;
        os << "result digests differ over " << op_count << " ops at n=" << n;
        return fail(name, os.str());
    }
    return pass(name);
}

check_result check_bit_iteration_law(uint64_t limit) {
    const char* name = "bit query iteration law";
    bit_tree<int64_t> t(limit);
    op_trace tr;
    for (uint64_t x = 1; x <= limit; ++x) {
        t.query(x, &tr);
        if (tr.iterations() != static_cast<size_t>(std::popcount(x))) {
            std::ostringstream os;
            os << "x=" << x << ": " << tr.iterations() << " iterations, popcount "
               << std::popcount(x);
            return fail(name, os.str());
        }
    }
    return pass(name);
}

check_result check_fit_iteration_law(uint64_t limit) {
    const char* name = "fit query iteration law";
    fit_tree<int64_t> t(limit);
    op_trace tr;
    for (uint64_t x = 1; x <= limit; ++x) {
        t.query(x, &tr);
        size_t terms = zeckendorf(x, t.fibs()).terms.size();
        if (tr.iterations() != terms) {
            std::ostringstream os;
            os << "x=" << x << ": " << tr.iterations() << " iterations, "
               << terms << " terms";
            return fail(name, os.str());
        }
    }
    return pass(name);
}

// The update walk must visit exactly {y in [x, n] : y - low(y) + 1 <= x},
// the nodes whose stored range contains x.
template <typename Tree, typename LowFn>
check_result check_update_coverage(const char* name, uint64_t n_max, LowFn low) {
    for (uint64_t n = 1; n <= n_max; ++n) {
        Tree t(n);
        op_trace tr;
        for (uint64_t x = 1; x <= n; ++x) {
            t.update(x, 0, &tr);
            std::vector<uint64_t> covering;
            for (uint64_t y = x; y <= n; ++y)
                if (y - low(t, y) + 1 <= x) covering.push_back(y);
            if (tr.visited != covering) {
                std::ostringstream os;
                os << "n=" << n << " x=" << x << ": visited "
                   << tr.visited.size() << " nodes, covering set has "
                   << covering.size();
                return fail(name, os.str());
            }
        }
    }
    return pass(name);
}

template <typename Tree>
check_result node_ranges_after_updates(const char* label, uint64_t n,
                                       uint64_t seed,
                                       check_result (*checker)(const Tree&)) {
    std::ostringstream os;
    os << label;
    uint64_t state = seed;
    std::vector<int64_t> base(n);
    for (auto& v : base) v = rand_value(state);
    Tree t{std::span<const int64_t>(base)};
    for (uint64_t i = 0; i < std::min<uint64_t>(n, 1000); ++i)
        t.update(1 + next_rand(state) % n, rand_value(state));
    check_result res = checker(t);
    res.name = os.str();
    return res;
}

}  // namespace

bool verify_report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const check_result& c) { return c.passed; });
}

size_t verify_report::failed_count() const {
    return static_cast<size_t>(
        std::count_if(checks.begin(), checks.end(),
                      [](const check_result& c) { return !c.passed; }));
}

check_result check_bit_node_ranges(const bit_tree<int64_t>& t) {
    const char* name = "bit node range invariant";
    const uint64_t n = t.size();
    std::vector<int64_t> pre(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i) pre[i] = pre[i - 1] + t.at(i);
    for (uint64_t x = 1; x <= n; ++x) {
        uint64_t lo = x - lsub(x) + 1;
        int64_t want = pre[x] - pre[lo - 1];
        if (t.tree_node(x) != want) {
            std::ostringstream os;
            os << "node " << x << " stores " << t.tree_node(x)
               << ", range [" << lo << "," << x << "] sums to " << want;
            return fail(name, os.str());
        }
    }
    return pass(name);
}

check_result check_fit_node_ranges(const fit_tree<int64_t>& t) {
    const char* name = "fit node range invariant";
    const uint64_t n = t.size();
    std::vector<int64_t> pre(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i) pre[i] = pre[i - 1] + t.at(i);
    for (uint64_t x = 1; x <= n; ++x) {
        uint64_t lo = x - t.lsuf_value(x) + 1;
        int64_t want = pre[x] - pre[lo - 1];
        if (t.tree_node(x) != want) {
            std::ostringstream os;
            os << "node " << x << " stores " << t.tree_node(x)
               << ", range [" << lo << "," << x << "] sums to " << want;
            return fail(name, os.str());
        }
    }
    return pass(name);
}

std::optional<std::string> lockstep_mismatch(uint64_t n,
                                             std::span<const workload_op> ops) {
    naive_prefix<int64_t> oracle(n);
    bit_tree<int64_t> bt(n);
    fit_tree<int64_t> ft(n);
    for (size_t i = 0; i < ops.size(); ++i) {
        const workload_op& op = ops[i];
        switch (op.kind) {
            case op_kind::query: {
                int64_t want = oracle.query(op.x);
                int64_t got_bit = bt.query(op.x);
                int64_t got_fit = ft.query(op.x);
                if (got_bit != want || got_fit != want) {
                    std::ostringstream os;
                    os << "op " << i << " query(" << op.x << "): naive " << want
                       << ", bit " << got_bit << ", fit " << got_fit;
                    return os.str();
                }
                break;
            }
            case op_kind::update:
                oracle.update(op.x, op.value);
                bt.update(op.x, op.value);
                ft.update(op.x, op.value);
                break;
            case op_kind::range_sum: {
                int64_t want = oracle.query(op.r) - oracle.query(op.x - 1);
                int64_t got_bit = range_sum(bt, op.x, op.r);
                int64_t got_fit = range_sum(ft, op.x, op.r);
                if (got_bit != want || got_fit != want) {
                    std::ostringstream os;
                    os << "op " << i << " range(" << op.x << "," << op.r
                       << "): naive " << want << ", bit " << got_bit << ", fit "
                       << got_fit;
                    return os.str();
                }
                break;
            }
        }
    }
    return std::nullopt;
}

std::vector<workload_op> shrink_ops(
    std::vector<workload_op> ops,
    const std::function<bool(std::span<const workload_op>)>& still_fails) {
    size_t chunk = std::max<size_t>(ops.size() / 2, 1);
    while (chunk >= 1 && !ops.empty()) {
        bool removed = false;
        for (size_t start = 0; start + chunk <= ops.size();) {
            std::vector<workload_op> candidate;
            candidate.reserve(ops.size() - chunk);
            candidate.insert(candidate.end(), ops.begin(), ops.begin() + start);
            candidate.insert(candidate.end(), ops.begin() + start + chunk, ops.end());
            if (still_fails(candidate)) {
                ops = std::move(candidate);
                removed = true;
            } else {
                start += chunk;
            }
        }
        if (chunk == 1 && !removed) break;
        if (!removed) chunk /= 2;
        chunk = std::min(chunk, std::max<size_t>(ops.size() / 2, 1));
    }
    return ops;
}

std::pair<uint64_t, std::vector<workload_op>> shrink_failure(
    uint64_t n, std::vector<workload_op> ops) {
    auto fails_at = [](uint64_t size) {
        return [size](std::span<const workload_op> candidate) {
            return lockstep_mismatch(size, candidate).has_value();
        };
    };
    ops = shrink_ops(std::move(ops), fails_at(n));

    // Try the smallest n that still holds every touched index.
    uint64_t max_index = 1;
    for (const workload_op& op : ops)
        max_index = std::max({max_index, op.x, op.r});
    if (max_index < n && lockstep_mismatch(max_index, ops))
        return {max_index, std::move(ops)};
    return {n, std::move(ops)};
}

verify_report run_verify_suite(uint64_t n, uint64_t seed) {
    const uint64_t scale = std::max<uint64_t>(n, 1);
    verify_report report;
    auto add = [&](check_result c) { report.checks.push_back(std::move(c)); };

    fib_table table = fib_table::with_capacity(scale);

    add(check_fib_recurrence(scale));
    add(check_zeckendorf_roundtrip(table, scale));
    add(check_zeckendorf_uniqueness(table, std::min<uint64_t>(scale, 10'000)));
    add(check_coding_bounds(table, std::min<uint64_t>(scale, 1'000'000)));
    add(check_lsub_oracle(std::min<uint64_t>(scale, 100'000)));
    add(check_lsuf_table(table, scale));
    add(check_phi_convergence());

    add(exhaustive_equivalence<bit_tree<int64_t>>(
        "bit/naive equivalence (exhaustive)", std::min<uint64_t>(scale, 64), seed));
    add(exhaustive_equivalence<fit_tree<int64_t>>(
        "fit/naive equivalence (exhaustive)", std::min<uint64_t>(scale, 64),
        seed + 1));

    // The naive oracle makes large randomized runs quadratic; cap its n
    // and cross-check bit against fit at full scale instead.
    add(randomized_equivalence(std::min<uint64_t>(scale, 10'000),
                               10 * std::min<size_t>(scale, 10'000), seed + 2));
    add(bit_fit_agreement(scale, std::min<size_t>(10 * scale, 100'000), seed + 3));

    add(check_bit_iteration_law(scale));
    add(check_fit_iteration_law(scale));
    const uint64_t coverage_n = std::min<uint64_t>(scale, 512);
    add(check_update_coverage<bit_tree<int64_t>>(
        "bit update coverage", coverage_n,
        [](const bit_tree<int64_t>&, uint64_t y) { return lsub(y); }));
    add(check_update_coverage<fit_tree<int64_t>>(
        "fit update coverage", coverage_n,
        [](const fit_tree<int64_t>& t, uint64_t y) { return t.lsuf_value(y); }));

    add(node_ranges_after_updates<bit_tree<int64_t>>(
        "bit node range invariant", scale, seed + 4, &check_bit_node_ranges));
    add(node_ranges_after_updates<fit_tree<int64_t>>(
        "fit node range invariant", scale, seed + 5, &check_fit_node_ranges));

    return report;
}

}  // namespace fitree
