#include "fitree/bench.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>

#include "fitree/bit_tree.hpp"
#include "fitree/core.hpp"
#include "fitree/fit_tree.hpp"

namespace fitree {

namespace {

constexpr uint64_t kExhaustiveLimit = uint64_t{1} << 20;

constexpr uint64_t lowest_bit(uint64_t x) { return x & (~x + 1); }

void fill_stats(op_stats& s, const std::vector<uint64_t>& xs,
                const std::vector<uint32_t>& counts) {
    s = {};
    if (counts.empty()) return;
    uint64_t sum = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        sum += counts[i];
        if (counts[i] > s.max) {
            s.max = counts[i];
            s.argmax = xs[i];
        }
    }
    s.mean = static_cast<double>(sum) / static_cast<double>(counts.size());
}

std::vector<uint64_t> grid_points(uint64_t max_index, const fib_table& t) {
    std::set<uint64_t> pts;
    auto add = [&](uint64_t x) {
        if (x >= 1 && x <= max_index) pts.insert(x);
    };
    add(1);
    add(max_index);
    for (uint64_t p = 1; p <= max_index; p *= 2) {
        add(p - 1);
        add(p);
        add(p + 1);
        if (p > max_index / 2) break;
    }
    const double phi = golden_ratio();
    for (double v = phi; v <= static_cast<double>(max_index) && v < 9.0e18; v *= phi)
        add(static_cast<uint64_t>(std::llround(v)));
    for (uint64_t f : t.values()) {
        if (f > max_index + 1) break;
        add(f - 1);
        add(f);
        add(f + 1);
    }
    return {pts.begin(), pts.end()};
}

}  // namespace

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

double log_phi(double x) { return std::log(x) / std::log(golden_ratio()); }

double log_phi2(double x) {
    const double phi = golden_ratio();
    return std::log(x) / std::log(phi * phi);
}

uint32_t bit_query_steps(uint64_t x) {
    uint32_t steps = 0;
    while (x > 0) {
        ++steps;
        x -= lowest_bit(x);
    }
    return steps;
}

uint32_t bit_update_steps(uint64_t x, uint64_t n) {
    if (x < 1) throw std::domain_error("bit_update_steps: x must be >= 1");
    uint32_t steps = 0;
    while (x <= n) {
        ++steps;
        x += lowest_bit(x);
    }
    return steps;
}

uint32_t fit_query_steps(uint64_t x, const fib_table& t) {
    uint32_t steps = 0;
    while (x > 0) {
        ++steps;
        x -= lsuf(x, t);
    }
    return steps;
}

uint32_t fit_update_steps(uint64_t x, uint64_t n, const fib_table& t) {
    if (x < 1) throw std::domain_error("fit_update_steps: x must be >= 1");
    uint32_t steps = 0;
    while (x <= n) {
        ++steps;
        x += t.prefib(lsuf(x, t));
    }
    return steps;
}

bench_report sweep_iterations(uint64_t max_index, bool force_grid) {
    if (max_index < 1)
        throw std::domain_error("sweep_iterations: max_index must be >= 1");

    bench_report r;
    r.max_index = max_index;
    r.grid = force_grid || max_index > kExhaustiveLimit;

    if (r.grid) {
        fib_table t = fib_table::with_capacity(max_index);
        r.sweep_x = grid_points(max_index, t);
        r.bit_query_iters.reserve(r.sweep_x.size());
        for (uint64_t x : r.sweep_x) {
            r.bit_query_iters.push_back(bit_query_steps(x));
            r.fit_query_iters.push_back(fit_query_steps(x, t));
            r.bit_update_iters.push_back(bit_update_steps(x, max_index));
            r.fit_update_iters.push_back(fit_update_steps(x, max_index, t));
        }
    } else {
        // Real instrumented operations on zero-filled trees; updates
        // reassign the current value so the contents never change.
        bit_tree<int64_t> bt(max_index);
        fit_tree<int64_t> ft(max_index);
        op_trace tr;
        r.sweep_x.reserve(max_index);
        r.bit_query_iters.reserve(max_index);
        r.fit_query_iters.reserve(max_index);
        r.bit_update_iters.reserve(max_index);
        r.fit_update_iters.reserve(max_index);
        for (uint64_t x = 1; x <= max_index; ++x) {
            r.sweep_x.push_back(x);
            bt.query(x, &tr);
            r.bit_query_iters.push_back(static_cast<uint32_t>(tr.iterations()));
            ft.query(x, &tr);
            r.fit_query_iters.push_back(static_cast<uint32_t>(tr.iterations()));
            bt.update(x, 0, &tr);
            r.bit_update_iters.push_back(static_cast<uint32_t>(tr.iterations()));
            ft.update(x, 0, &tr);
            r.fit_update_iters.push_back(static_cast<uint32_t>(tr.iterations()));
        }
    }

    r.log2_x.reserve(r.sweep_x.size());
    r.logphi_x.reserve(r.sweep_x.size());
    r.logphi2_x.reserve(r.sweep_x.size());
    for (uint64_t x : r.sweep_x) {
        const double xd = static_cast<double>(x);
        r.log2_x.push_back(std::log2(xd));
        r.logphi_x.push_back(log_phi(xd));
        r.logphi2_x.push_back(log_phi2(xd));
    }

    fill_stats(r.bit_query, r.sweep_x, r.bit_query_iters);
    fill_stats(r.fit_query, r.sweep_x, r.fit_query_iters);
    fill_stats(r.bit_update, r.sweep_x, r.bit_update_iters);
    fill_stats(r.fit_update, r.sweep_x, r.fit_update_iters);
    return r;
}

void emit_csv(const bench_report& r, const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f)
        throw std::runtime_error("emit_csv: cannot open " + path.string());

    static constexpr char header[] =
        "n,bit_query_iters,fit_query_iters,bit_update_iters,fit_update_iters,"
        "log2_n,logphi_n,logphi2_n\n";
    std::fputs(header, f);

    char line[192];
    for (size_t i = 0; i < r.sweep_x.size(); ++i) {
        int len = std::snprintf(line, sizeof line,
                                "%" PRIu64 ",%u,%u,%u,%u,%.6f,%.6f,%.6f\n",
                                r.sweep_x[i], r.bit_query_iters[i],
                                r.fit_query_iters[i], r.bit_update_iters[i],
                                r.fit_update_iters[i], r.log2_x[i],
                                r.logphi_x[i], r.logphi2_x[i]);
        std::fwrite(line, 1, static_cast<size_t>(len), f);
    }

    const bool failed = std::ferror(f) != 0;
    if (std::fclose(f) != 0 || failed)
        throw std::runtime_error("emit_csv: write failed for " + path.string());
}

}  // namespace fitree
