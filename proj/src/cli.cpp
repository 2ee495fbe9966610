#include "bfgp/cli.hpp"

#include "bfgp/bench.hpp"
#include "bfgp/parallel.hpp"
#include "bfgp/problem_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace bfgp {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

struct SynthArgs {
    std::string problem, out;
    std::size_t lines = 4;
    std::string strategy = "seq";
    std::size_t threads = 1;
    std::size_t seed_nodes = 1;
    std::size_t step_budget = kDefaultStepBudget;
    std::uint64_t timeout_ms = 0;
};

int run_synth(const SynthArgs &a) {
    BenchStrategy strategy;
    try {
        strategy = parse_bench_strategy(a.strategy);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const ProblemSet problems = load_problem_set(a.problem);
    SearchConfig base;
    base.n_lines = a.lines;
    base.step_budget = a.step_budget;
    base.time_budget_ms = a.timeout_ms;

    SolutionReport report;
    if (strategy == BenchStrategy::Seq) {
        report = bfgp_search(problems, base);
    } else {
        ParallelConfig config;
        config.base = base;
        config.threads = a.threads;
        config.seed_per_thread = a.seed_nodes;
        config.strategy = strategy == BenchStrategy::Share ? ParallelStrategy::Sharing
                                                           : ParallelStrategy::Independent;
        report = parallel_search(problems, config);
    }
    std::cerr << "status " << to_string(report.status) << ", expanded " << report.expanded
              << ", generated " << report.generated << ", shared " << report.shared << ", "
              << report.wall_time_ms << " ms\n";
    if (report.status != SearchStatus::Solved)
        return kFailed;
    write_text(a.out, format_program(*report.program, problems.domain));
    return kOk;
}

int run_validate(const std::string &problem_path, const std::string &program_path) {
    const ProblemSet problems = load_problem_set(problem_path);
    const Program program = load_program(program_path, problems.domain);
    const auto violations = validate_structure(program, problems.domain);
    for (const Violation &v : violations)
        std::cout << "line " << v.line << ": " << v.message << '\n';
    if (!violations.empty())
        return kFailed;
    const auto outcomes = run_all(program, problems, kDefaultStepBudget, false);
    bool all = true;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const ExecutionOutcome &o = outcomes[i];
        std::cout << "instance " << i << " (" << problems.instances[i].objects_note << "): ";
        if (const auto *s = std::get_if<Solved>(&o.result)) {
            std::cout << "solved, plan length " << s->plan.size() << '\n';
        } else if (const auto *h = std::get_if<HaltedAtEmpty>(&o.result)) {
            all = false;
            std::cout << "halted at empty line " << h->line << '\n';
        } else {
            const auto &f = std::get<Failed>(o.result);
            all = false;
            std::cout << "failed (" << to_string(f.reason) << ") at line " << f.line << '\n';
        }
    }
    std::cout << (all ? "valid" : "invalid") << '\n';
    return all ? kOk : kFailed;
}

std::vector<SuiteSpec> parse_suites(const std::vector<std::string> &names,
                                    const std::vector<int> &sizes, std::size_t lines) {
    std::vector<SuiteSpec> suites;
    std::vector<std::string> all;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        for (const SuiteInfo &info : suite_registry())
            all.push_back(info.name);
    }
    for (const std::string &name : all.empty() ? names : all) {
        SuiteSpec spec;
        try {
            spec = default_suite(name);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        if (!sizes.empty())
            spec.sizes = sizes;
        if (lines)
            spec.n_lines = lines;
        suites.push_back(std::move(spec));
    }
    return suites;
}

}  // namespace

int cli_main(int argc, char **argv) {
    CLI::App app{"Generalized planning by best-first search over planning programs"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto *synth_cmd = app.add_subcommand("synth", "synthesize a planning program");
    synth_cmd->add_option("--problem", synth.problem, "problem set file")->required();
    synth_cmd->add_option("--lines", synth.lines, "program length")->check(CLI::Range(1, 0xffff));
    synth_cmd->add_option("--strategy", synth.strategy, "seq, indep or share")
        ->check(CLI::IsMember({"seq", "indep", "share"}));
    synth_cmd->add_option("--threads", synth.threads, "worker threads")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--seed-nodes", synth.seed_nodes, "open nodes per thread before splitting")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--step-budget", synth.step_budget, "max steps per instance run")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--timeout-ms", synth.timeout_ms, "wall time limit, 0 = none");
    synth_cmd->add_option("--out", synth.out, "program output file (default stdout)");

    std::string problem_path, program_path;
    auto *validate_cmd = app.add_subcommand("validate", "check a program on every instance");
    validate_cmd->add_option("--problem", problem_path, "problem set file")->required();
    validate_cmd->add_option("--program", program_path, "program file")->required();

    std::vector<std::string> bench_suites, bench_strategies{"seq", "indep", "share"};
    std::vector<std::size_t> bench_threads{1, 2, 4, 8};
    std::vector<int> bench_sizes;
    std::size_t bench_lines = 0, bench_repeats = 3;
    std::uint64_t bench_timeout = 60'000;
    std::string csv_path;
    auto *bench_cmd = app.add_subcommand("bench", "time the strategies over generated suites");
    bench_cmd->add_option("--suites", bench_suites, "domain names or 'all'")->delimiter(',');
    bench_cmd->add_option("--strategies", bench_strategies, "subset of seq,indep,share")
        ->delimiter(',')
        ->check(CLI::IsMember({"seq", "indep", "share"}));
    bench_cmd->add_option("--threads", bench_threads, "thread counts")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--repeats", bench_repeats, "runs per configuration")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--timeout-ms", bench_timeout, "per-run limit");
    bench_cmd->add_option("--sizes", bench_sizes, "override instance sizes for every suite")
        ->delimiter(',');
    bench_cmd->add_option("--lines", bench_lines, "override program length for every suite");
    bench_cmd->add_option("--csv", csv_path, "write one row per run");

    std::string gen_domain, gen_out;
    std::vector<int> gen_sizes;
    auto *gen_cmd = app.add_subcommand("gen", "write a generated problem set");
    gen_cmd->add_option("--domain", gen_domain, "domain name")->required();
    gen_cmd->add_option("--sizes", gen_sizes, "instance sizes (default: registry)")->delimiter(',');
    gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (*synth_cmd)
            return run_synth(synth);
        if (*validate_cmd)
            return run_validate(problem_path, program_path);
        if (*gen_cmd) {
            SuiteSpec spec;
            try {
                spec = default_suite(gen_domain);
                if (!gen_sizes.empty())
                    spec.sizes = gen_sizes;
                const ProblemSet problems = generate_suite(spec);
                write_text(gen_out, serialize_problem_set(problems));
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            return kOk;
        }
        if (*bench_cmd) {
            BenchOptions options;
            options.strategies.clear();
            for (const std::string &s : bench_strategies)
                options.strategies.push_back(parse_bench_strategy(s));
            options.thread_counts = bench_threads;
            options.repeats = bench_repeats;
            options.timeout_ms = bench_timeout;
            const auto suites = parse_suites(bench_suites, bench_sizes, bench_lines);
            const auto rows = run_benchmark(suites, options);
            if (!csv_path.empty()) {
                std::ofstream out(csv_path);
                if (!out)
                    throw std::runtime_error("cannot write " + csv_path);
                write_csv(out, rows);
            }
            try {
                print_speedups(std::cout, report_speedups(rows));
            } catch (const std::invalid_argument &e) {
                std::cerr << "speedups: " << e.what() << '\n';
            }
            return kOk;
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}

}  // namespace bfgp
