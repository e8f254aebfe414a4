// Command-line front door: invariant verification, iteration-count
// benchmarking, per-operation tracing and codec inspection.

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fitree/bench.hpp"
#include "fitree/bit_tree.hpp"
#include "fitree/fib_codec.hpp"
#include "fitree/fit_tree.hpp"
#include "fitree/verify.hpp"
#include "fitree/workload.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string join_sum(const fitree::zeckendorf_rep& z, const fitree::fib_table& t) {
    std::string s = std::to_string(z.value) + " = ";
    for (size_t i = z.terms.size(); i-- > 0;) {
        s += std::to_string(t.value(z.terms[i]));
        if (i != 0) s += " + ";
    }
    return s;
}

std::string path_string(const fitree::op_trace& tr, uint64_t terminal, bool stop) {
    std::string s;
    for (uint64_t v : tr.visited) {
        s += std::to_string(v);
        s += " -> ";
    }
    if (stop)
        s += "(" + std::to_string(terminal) + " stop)";
    else
        s += std::to_string(terminal);
    return s;
}

int run_codec(uint64_t x) {
    if (x == 0) {
        std::fprintf(stderr, "codec: --x must be >= 1\n");
        return kExitUsage;
    }
    fitree::fib_table t;
    try {
        t = fitree::fib_table::with_capacity(x);
    } catch (const std::overflow_error& e) {
        std::fprintf(stderr, "codec: %s\n", e.what());
        return kExitUsage;
    }
    fitree::zeckendorf_rep z = fitree::zeckendorf(x, t);
    std::printf("x = %" PRIu64 "\n", x);
    std::printf("zeckendorf: %s\n", join_sum(z, t).c_str());
    std::printf("coding (lsb first): %s\n", fitree::coding_string(z, false).c_str());
    std::printf("coding (msb first): %s\n", fitree::coding_string(z, true).c_str());
    std::printf("lsuf: %" PRIu64 "\n", fitree::lsuf(x, t));
    std::printf("lsub: %" PRIu64 "\n", fitree::lsub(x));
    return kExitPass;
}

int run_trace(uint64_t x, uint64_t n, const std::string& op) {
    if (x < 1 || x > n) {
        std::fprintf(stderr, "trace: need 1 <= x <= n (got x=%" PRIu64
                             ", n=%" PRIu64 ")\n", x, n);
        return kExitUsage;
    }
    fitree::bit_tree<int64_t> bt(n);
    fitree::fit_tree<int64_t> ft(n);
    const fitree::fib_table& fibs = ft.fibs();
    fitree::zeckendorf_rep z = fitree::zeckendorf(x, fibs);

    std::printf("x = %" PRIu64 ", n = %" PRIu64 "\n", x, n);
    std::printf("zeckendorf: %s\n", join_sum(z, fibs).c_str());
    std::printf("coding (msb first): %s\n", fitree::coding_string(z, true).c_str());

    fitree::op_trace tr;
    if (op == "query") {
        bt.query(x, &tr);
        std::printf("bit query path: %s (%zu iterations)\n",
                    path_string(tr, 0, false).c_str(), tr.iterations());
        for (uint64_t v : tr.visited)
            std::printf("  %" PRIu64 ": lsub=%" PRIu64 ", -%" PRIu64 " -> %" PRIu64 "\n",
                        v, fitree::lsub(v), fitree::lsub(v), v - fitree::lsub(v));
        ft.query(x, &tr);
        std::printf("fit query path: %s (%zu iterations)\n",
                    path_string(tr, 0, false).c_str(), tr.iterations());
        for (uint64_t v : tr.visited) {
            uint64_t f = ft.lsuf_value(v);
            std::printf("  %" PRIu64 ": lsuf=%" PRIu64 ", -%" PRIu64 " -> %" PRIu64 "\n",
                        v, f, f, v - f);
        }
    } else {
        bt.update(x, 0, &tr);
        uint64_t last = tr.visited.back();
        std::printf("bit update path: %s (%zu iterations)\n",
                    path_string(tr, last + fitree::lsub(last), true).c_str(),
                    tr.iterations());
        for (uint64_t v : tr.visited)
            std::printf("  %" PRIu64 ": lsub=%" PRIu64 ", +%" PRIu64 " -> %" PRIu64 "\n",
                        v, fitree::lsub(v), fitree::lsub(v), v + fitree::lsub(v));
        ft.update(x, 0, &tr);
        last = tr.visited.back();
        uint64_t step = fibs.prefib(ft.lsuf_value(last));
        std::printf("fit update path: %s (%zu iterations)\n",
                    path_string(tr, last + step, true).c_str(), tr.iterations());
        for (uint64_t v : tr.visited) {
            uint64_t f = ft.lsuf_value(v);
            uint64_t s = fibs.prefib(f);
            std::printf("  %" PRIu64 ": lsuf=%" PRIu64 ", +prefib(%" PRIu64
                        ")=%" PRIu64 " -> %" PRIu64 "\n", v, f, f, s, v + s);
        }
    }
    return kExitPass;
}

int run_verify(uint64_t n, uint64_t seed) {
    std::printf("verify: n=%" PRIu64 " seed=%" PRIu64 "\n", n, seed);
    fitree::verify_report report = fitree::run_verify_suite(n, seed);
    for (const fitree::check_result& c : report.checks) {
        if (c.passed)
            std::printf("[PASS] %s\n", c.name.c_str());
        else
            std::printf("[FAIL] %s - %s\n", c.name.c_str(), c.detail.c_str());
    }
    if (report.all_passed()) {
        std::printf("all %zu checks passed\n", report.checks.size());
        return kExitPass;
    }
    std::printf("%zu of %zu checks failed\n", report.failed_count(),
                report.checks.size());
    for (const fitree::check_result& c : report.checks)
        if (!c.passed)
            std::fprintf(stderr, "verify failure: %s - %s\n", c.name.c_str(),
                         c.detail.c_str());
    return kExitInvariantFailure;
}

std::vector<fitree::backend_kind> parse_backends(const std::string& which) {
    using fitree::backend_kind;
    if (which == "naive") return {backend_kind::naive};
    if (which == "bit") return {backend_kind::bit};
    if (which == "fit") return {backend_kind::fit};
    return {backend_kind::naive, backend_kind::bit, backend_kind::fit};
}

int run_bench(uint64_t n, uint64_t seed, bool grid, const std::string& out,
              const std::string& backend) {
    fitree::bench_report report = fitree::sweep_iterations(n, grid);
    std::printf("sweep: N=%" PRIu64 " points=%zu mode=%s\n", n,
                report.sweep_x.size(), report.grid ? "grid" : "exhaustive");
    std::printf("%-12s %6s %10s %12s\n", "op", "max", "mean", "argmax");
    auto row = [](const char* label, const fitree::op_stats& s) {
        std::printf("%-12s %6u %10.4f %12" PRIu64 "\n", label, s.max, s.mean,
                    s.argmax);
    };
    row("bit query", report.bit_query);
    row("fit query", report.fit_query);
    row("bit update", report.bit_update);
    row("fit update", report.fit_update);

    // Range-sum pattern: two queries per update.
    const uint64_t wn = std::min<uint64_t>(n, 100'000);
    fitree::workload w = fitree::make_workload(wn, 30'000, {0, 1, 1}, seed);
    std::printf("workload: n=%" PRIu64 " ops=%zu mix=%s seed=%" PRIu64 "\n", wn,
                w.ops.size(), w.mix.to_string().c_str(), seed);
    for (fitree::backend_kind b : parse_backends(backend)) {
        fitree::workload_result res = fitree::run_workload(w, b);
        report.workload_runs.push_back(res);
        std::printf("  %-6s iterations=%-12" PRIu64 " wall=%.3fs digest=%016" PRIx64 "\n",
                    fitree::backend_name(b), res.total_iterations,
                    res.wall_seconds, res.result_digest);
    }

    try {
        fitree::emit_csv(report, out);
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "bench: %s\n", e.what());
        return kExitIo;
    }
    std::printf("csv: %s\n", out.c_str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prefix-sum trees over binary and Zeckendorf index decompositions"};
    app.require_subcommand(1);

    uint64_t n = 1024;
    uint64_t seed = 42;
    uint64_t x = 0;
    bool grid = false;
    std::string out = "fitree_bench.csv";
    std::string backend = "all";
    std::string op = "query";

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--n", n, "scale of the checks");
    verify->add_option("--seed", seed, "rng seed");

    CLI::App* bench = app.add_subcommand(
        "bench", "sweep iteration counts and write the comparison csv");
    bench->add_option("--n", n, "largest swept index");
    bench->add_option("--seed", seed, "rng seed for the workload section");
    bench->add_option("--out", out, "csv output path");
    bench->add_flag("--grid", grid, "force the logarithmic grid sweep");
    bench->add_option("--backend", backend, "workload backend")
        ->check(CLI::IsMember({"naive", "bit", "fit", "all"}));

    CLI::App* trace = app.add_subcommand(
        "trace", "print the loop steps of one query or update");
    trace->add_option("--x", x, "operation index")->required();
    trace->add_option("--n", n, "tree size");
    trace->add_option("--op", op, "operation")
        ->check(CLI::IsMember({"query", "update"}));

    CLI::App* codec = app.add_subcommand(
        "codec", "print the Zeckendorf decomposition and codings of x");
    codec->add_option("--x", x, "value to decompose")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(n, seed);
        if (app.got_subcommand(bench)) return run_bench(n, seed, grid, out, backend);
        if (app.got_subcommand(trace)) return run_trace(x, n, op);
        if (app.got_subcommand(codec)) return run_codec(x);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitUsage;
}
