#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fitree/fib_codec.hpp"
#include "fitree/workload.hpp"

namespace fitree {

// (1 + sqrt 5) / 2, the limit of consecutive Fibonacci ratios.
double golden_ratio();

double log_phi(double x);   // log base golden_ratio()
double log_phi2(double x);  // log base golden_ratio()^2

// Loop lengths of the four index walks, computed without touching any
// tree payload (the walks depend only on the index structure). Used for
// sweeps too large to back with an allocated tree; equal to the traced
// iteration counts of the corresponding tree operations.
uint32_t bit_query_steps(uint64_t x);
uint32_t bit_update_steps(uint64_t x, uint64_t n);
uint32_t fit_query_steps(uint64_t x, const fib_table& t);
uint32_t fit_update_steps(uint64_t x, uint64_t n, const fib_table& t);

struct op_stats {
    uint32_t max = 0;
    double mean = 0.0;
    uint64_t argmax = 0;  // smallest sweep point attaining max
};

// Per-index iteration counts plus theory curves and aggregates; the raw
// material behind the query/update cost comparison plots.
struct bench_report {
    uint64_t max_index = 0;
    bool grid = false;

    std::vector<uint64_t> sweep_x;
    std::vector<uint32_t> bit_query_iters, fit_query_iters;
    std::vector<uint32_t> bit_update_iters, fit_update_iters;
    std::vector<double> log2_x, logphi_x, logphi2_x;

    op_stats bit_query, fit_query, bit_update, fit_update;

    std::vector<workload_result> workload_runs;
};

// Iteration counts of query and update at every sweep point, with the
// tree sized to max_index. Exhaustive (every x in [1, max_index]) up to
// 2^20 unless force_grid; above that a logarithmic grid of powers of two
// and of the golden ratio plus the Fibonacci +-1 neighbourhoods, which is
// where the worst cases sit. Throws std::overflow_error when max_index
// exceeds what the Fibonacci table can cover.
bench_report sweep_iterations(uint64_t max_index, bool force_grid = false);

// CSV, UTF-8, one row per sweep point, header exactly:
// n,bit_query_iters,fit_query_iters,bit_update_iters,fit_update_iters,log2_n,logphi_n,logphi2_n
// Integer columns are bare; the theory columns carry 6 decimal places.
void emit_csv(const bench_report& r, const std::filesystem::path& path);

}  // namespace fitree
