// Command-line front end for the mergeable dictionary: replay traces,
// generate workloads, and emit per-op cost CSVs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mdict/bench.hpp"
#include "mdict/trace.hpp"
#include "mdict/workload.hpp"

namespace {

std::vector<mdict::TraceOp> load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return mdict::parse_trace(text.str());
}

int report_problems(const mdict::RunReport& report) {
    for (const auto& d : report.divergences) std::cerr << "divergence: " << d << '\n';
    for (const auto& f : report.invariant_failures) std::cerr << "invariant failure: " << f << '\n';
    return report.clean() ? 0 : 1;
}

int cmd_run(const std::string& path, const std::string& check, bool oracle) {
    mdict::RunOptions opts;
    opts.oracle = oracle;
    if (check == "final") opts.check = mdict::CheckMode::Final;
    else if (check == "every-op") opts.check = mdict::CheckMode::EveryOp;

    const auto ops = load_trace(path);
    const auto report = mdict::run_trace(ops, opts);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].kind != mdict::OpKind::Search) continue;
        const auto& found = report.outcomes[i].found;
        std::cout << "search " << i << ": " << (found ? std::to_string(*found) : std::string("none")) << '\n';
    }
    std::cout << "ops=" << ops.size() << " work=" << report.total_work << " divergences=" << report.divergences.size()
              << " invariant_failures=" << report.invariant_failures.size() << '\n';
    return report_problems(report);
}

int cmd_bench(const std::string& path, const std::string& out, bool baseline) {
    mdict::RunOptions opts;
    opts.potential = true;
    const auto ops = load_trace(path);
    const auto report = baseline ? mdict::run_baseline(ops, opts) : mdict::run_trace(ops, opts);
    if (out.empty() || out == "-") {
        mdict::write_csv(std::cout, report);
    } else {
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot write " + out);
        mdict::write_csv(file, report);
        if (!file) throw std::runtime_error("write failed for " + out);
    }
    return 0;
}

int cmd_selftest(std::uint64_t seed, std::uint64_t ops_per_kind) {
    int failures = 0;
    for (auto kind : {mdict::WorkloadKind::InterleaveMerge, mdict::WorkloadKind::UnionSplitFind,
                      mdict::WorkloadKind::ShiftHeavy, mdict::WorkloadKind::AdversarialK}) {
        for (unsigned bits : {10u, 16u, 20u}) {
            mdict::WorkloadParams p;
            p.num_sets = kind == mdict::WorkloadKind::AdversarialK ? 16 : 32;
            p.universe_bits = bits;
            p.ops = kind == mdict::WorkloadKind::AdversarialK ? ops_per_kind / 8 : ops_per_kind;
            const auto trace = mdict::gen_workload(kind, seed + bits, p);
            const auto report = mdict::run_trace(trace, {mdict::CheckMode::EveryOp, true, false});
            const bool ok = report.clean();
            std::cout << (ok ? "PASS " : "FAIL ") << mdict::to_string(kind) << " U=2^" << bits
                      << " ops=" << trace.size() << '\n';
            if (!ok) {
                ++failures;
                report_problems(report);
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mdict: mergeable dictionary with shifts"};
    app.require_subcommand(1);

    std::string trace_path;
    std::string check = "none";
    bool oracle = false;
    auto* run = app.add_subcommand("run", "Replay a trace against the engine");
    run->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
    run->add_option("--check", check, "Invariant checks")->check(CLI::IsMember({"none", "final", "every-op"}));
    run->add_flag("--oracle", oracle, "Cross-check every op against the brute-force oracle");

    std::string kind_name = "interleave-merge";
    std::uint64_t seed = 1;
    mdict::WorkloadParams params;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a workload trace");
    gen->add_option("--kind", kind_name, "Workload kind")
        ->check(CLI::IsMember({"interleave-merge", "union-split-find", "shift-heavy", "adversarial-k"}));
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--sets", params.num_sets, "Initial sets (elements per side for adversarial-k)")
        ->check(CLI::PositiveNumber);
    gen->add_option("--universe-bits", params.universe_bits, "Keys drawn from [1, 2^bits]")->check(CLI::Range(1, 58));
    gen->add_option("--ops", params.ops, "Operations (merges for adversarial-k)")->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "Output path (default stdout)");

    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Per-op cost CSV for the biased engine");
    bench->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
    bench->add_option("--out", bench_out, "CSV path (default stdout)");

    auto* baseline = app.add_subcommand("baseline", "Per-op cost CSV for the uniform-weight baseline");
    baseline->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
    baseline->add_option("--out", bench_out, "CSV path (default stdout)");

    std::uint64_t self_ops = 20000;
    auto* selftest = app.add_subcommand("selftest", "Oracle and invariant suite over generated workloads");
    selftest->add_option("--seed", seed, "RNG seed");
    selftest->add_option("--ops", self_ops, "Operations per workload")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(trace_path, check, oracle);
        if (*bench) return cmd_bench(trace_path, bench_out, false);
        if (*baseline) return cmd_bench(trace_path, bench_out, true);
        if (*selftest) return cmd_selftest(seed, self_ops);
        if (*gen) {
            const auto ops = mdict::gen_workload(*mdict::parse_workload_kind(kind_name), seed, params);
            const std::string text = mdict::format_trace(ops);
            if (gen_out.empty() || gen_out == "-") {
                std::cout << text;
            } else {
                std::ofstream file(gen_out);
                file << text;
                if (!file) throw std::runtime_error("write failed for " + gen_out);
            }
            return 0;
        }
    } catch (const mdict::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const mdict::TraceError& e) {
        std::cerr << "trace error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
