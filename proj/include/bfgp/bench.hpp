#pragma once

#include "bfgp/program.hpp"
#include "bfgp/suites.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bfgp {

enum class BenchStrategy { Seq, Indep, Share };

const char *to_string(BenchStrategy strategy);
BenchStrategy parse_bench_strategy(const std::string &text);  // throws std::invalid_argument

enum class RunStatus { Solved, Exhausted, Timeout };

const char *to_string(RunStatus status);
RunStatus parse_run_status(const std::string &text);

struct BenchmarkRow {
    std::string domain;
    BenchStrategy strategy = BenchStrategy::Seq;
    std::size_t threads = 1;
    std::size_t run_index = 0;
    double wall_time_ms = 0.0;
    RunStatus status = RunStatus::Exhausted;
    std::uint64_t expanded = 0;
    std::uint64_t shared = 0;
    std::string program_text;  // ';'-joined, empty unless solved

    bool operator==(const BenchmarkRow &) const = default;
};

struct BenchOptions {
    std::vector<BenchStrategy> strategies{BenchStrategy::Seq, BenchStrategy::Indep,
                                          BenchStrategy::Share};
    std::vector<std::size_t> thread_counts{1, 2, 4, 8};
    std::size_t repeats = 3;
    std::uint64_t timeout_ms = 60'000;
    std::size_t step_budget = kDefaultStepBudget;
};

/*
  Every (suite, strategy, threads, repeat) combination, one search at a
  time, rows in execution order. The sequential strategy only runs at
  t = 1. Solved rows are re-validated; a failed validation throws
  std::logic_error.
*/
std::vector<BenchmarkRow> run_benchmark(const std::vector<SuiteSpec> &suites,
                                        const BenchOptions &options);

struct SpeedupEntry {
    std::string domain;
    BenchStrategy strategy = BenchStrategy::Seq;
    std::size_t threads = 1;
    std::size_t runs = 0;          // non-timeout rows behind the median
    std::optional<double> median_ms;
    std::optional<double> speedup;  // empty when unmeasurable
    bool too_fast = false;          // baseline below 1 ms
};

/*
  Median wall time per (domain, strategy, threads) and speedup against the
  domain's median sequential t = 1 time. Timeout rows are ignored. Throws
  std::invalid_argument naming the domain when it has no baseline.
*/
std::vector<SpeedupEntry> report_speedups(const std::vector<BenchmarkRow> &rows);

void print_speedups(std::ostream &out, const std::vector<SpeedupEntry> &entries);

inline constexpr const char *kCsvHeader =
    "domain,strategy,threads,run,wall_time_ms,status,expanded,shared,program";

void write_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows);
std::vector<BenchmarkRow> read_csv(std::istream &in);  // throws std::runtime_error

double median(std::vector<double> values);

}  // namespace bfgp
