#include "bfgp/bench.hpp"

#include "bfgp/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace bfgp {

const char *to_string(BenchStrategy strategy) {
    switch (strategy) {
    case BenchStrategy::Seq:
        return "seq";
    case BenchStrategy::Indep:
        return "indep";
    case BenchStrategy::Share:
        return "share";
    }
    return "?";
}

BenchStrategy parse_bench_strategy(const std::string &text) {
    if (text == "seq")
        return BenchStrategy::Seq;
    if (text == "indep")
        return BenchStrategy::Indep;
    if (text == "share")
        return BenchStrategy::Share;
    throw std::invalid_argument("unknown strategy '" + text + "'");
}

const char *to_string(RunStatus status) {
    switch (status) {
    case RunStatus::Solved:
        return "solved";
    case RunStatus::Exhausted:
        return "exhausted";
    case RunStatus::Timeout:
        return "timeout";
    }
    return "?";
}

RunStatus parse_run_status(const std::string &text) {
    if (text == "solved")
        return RunStatus::Solved;
    if (text == "exhausted")
        return RunStatus::Exhausted;
    if (text == "timeout")
        return RunStatus::Timeout;
    throw std::invalid_argument("unknown run status '" + text + "'");
}

namespace {

BenchmarkRow run_once(const SuiteSpec &suite, const ProblemSet &problems, BenchStrategy strategy,
                      std::size_t threads, std::size_t run_index, const BenchOptions &options) {
    SearchConfig base;
    base.n_lines = suite_lines(suite);
    base.step_budget = options.step_budget;
    base.time_budget_ms = options.timeout_ms;

    SolutionReport report;
    if (strategy == BenchStrategy::Seq) {
        report = bfgp_search(problems, base);
    } else {
        ParallelConfig config;
        config.base = base;
        config.threads = threads;
        config.seed_per_thread = suite_info(suite.domain_name).seed_per_thread;
        config.strategy = strategy == BenchStrategy::Share ? ParallelStrategy::Sharing
                                                           : ParallelStrategy::Independent;
        report = parallel_search(problems, config);
    }

    BenchmarkRow row;
    row.domain = suite.domain_name;
    row.strategy = strategy;
    row.threads = threads;
    row.run_index = run_index;
    row.wall_time_ms = report.wall_time_ms;
    row.expanded = report.expanded;
    row.shared = report.shared;
    switch (report.status) {
    case SearchStatus::Solved:
        row.status = RunStatus::Solved;
        if (!report.program || !is_solution(*report.program, problems, options.step_budget))
            throw std::logic_error("benchmark produced an invalid program for " + row.domain);
        row.program_text = format_program_inline(*report.program, problems.domain);
        break;
    case SearchStatus::Exhausted:
        row.status = RunStatus::Exhausted;
        break;
    case SearchStatus::BudgetExceeded:
        row.status = RunStatus::Timeout;
        break;
    }
    return row;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const std::vector<SuiteSpec> &suites,
                                        const BenchOptions &options) {
    if (options.repeats < 1)
        throw std::invalid_argument("repeats must be at least 1");
    std::vector<BenchmarkRow> rows;
    for (const SuiteSpec &suite : suites) {
        const ProblemSet problems = generate_suite(suite);
        for (BenchStrategy strategy : options.strategies) {
            for (std::size_t t : options.thread_counts) {
                if (strategy == BenchStrategy::Seq && t != 1)
                    continue;
                for (std::size_t r = 0; r < options.repeats; ++r)
                    rows.push_back(run_once(suite, problems, strategy, t, r, options));
            }
        }
    }
    return rows;
}

double median(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("median of an empty list");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<SpeedupEntry> report_speedups(const std::vector<BenchmarkRow> &rows) {
    using Key = std::tuple<std::string, BenchStrategy, std::size_t>;
    std::map<Key, std::vector<double>> times;
    std::vector<Key> order;
    std::vector<std::string> domains;
    for (const BenchmarkRow &row : rows) {
        const Key key{row.domain, row.strategy, row.threads};
        auto [it, inserted] = times.try_emplace(key);
        if (inserted)
            order.push_back(key);
        if (row.status != RunStatus::Timeout)
            it->second.push_back(row.wall_time_ms);
        if (std::find(domains.begin(), domains.end(), row.domain) == domains.end())
            domains.push_back(row.domain);
    }

    std::map<std::string, double> baseline;
    for (const std::string &domain : domains) {
        auto it = times.find(Key{domain, BenchStrategy::Seq, 1});
        if (it == times.end() || it->second.empty())
            throw std::invalid_argument("no sequential t=1 baseline for domain '" + domain + "'");
        baseline[domain] = median(it->second);
    }

    std::vector<SpeedupEntry> out;
    for (const Key &key : order) {
        SpeedupEntry e;
        std::tie(e.domain, e.strategy, e.threads) = key;
        const auto &samples = times[key];
        e.runs = samples.size();
        const double base = baseline[e.domain];
        e.too_fast = base < 1.0;
        if (!samples.empty()) {
            e.median_ms = median(samples);
            if (!e.too_fast && *e.median_ms > 0.0)
                e.speedup = base / *e.median_ms;
        }
        out.push_back(std::move(e));
    }
    return out;
}

void print_speedups(std::ostream &out, const std::vector<SpeedupEntry> &entries) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-16s %-6s %4s %5s %12s %9s\n", "domain", "strat", "t", "runs",
                  "median_ms", "speedup");
    out << buf;
    for (const SpeedupEntry &e : entries) {
        std::string median_text = e.median_ms ? std::to_string(*e.median_ms) : "timeout";
        std::string speedup_text = "-";
        if (e.too_fast)
            speedup_text = "too fast to measure";
        else if (e.speedup)
            speedup_text = std::to_string(*e.speedup);
        std::snprintf(buf, sizeof buf, "%-16s %-6s %4zu %5zu %12s %9s\n", e.domain.c_str(),
                      to_string(e.strategy), e.threads, e.runs, median_text.c_str(),
                      speedup_text.c_str());
        out << buf;
    }
}

namespace {

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(const std::string &line, std::size_t line_no) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted)
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": unterminated quote");
    return fields;
}

template <typename T>
T parse_number(const std::string &text, std::size_t line_no) {
    T value{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + text +
                                 "'");
    return value;
}

}  // namespace

void write_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows) {
    out << kCsvHeader << '\n';
    for (const BenchmarkRow &r : rows) {
        out << csv_field(r.domain) << ',' << to_string(r.strategy) << ',' << r.threads << ','
            << r.run_index << ',' << format_double(r.wall_time_ms) << ',' << to_string(r.status)
            << ',' << r.expanded << ',' << r.shared << ',' << csv_field(r.program_text) << '\n';
    }
}

std::vector<BenchmarkRow> read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("csv line 1: unexpected header");
    std::vector<BenchmarkRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto f = split_csv_line(line, line_no);
        if (f.size() != 9)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 9 fields");
        BenchmarkRow r;
        r.domain = f[0];
        try {
            r.strategy = parse_bench_strategy(f[1]);
            r.status = parse_run_status(f[5]);
        } catch (const std::invalid_argument &e) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": " + e.what());
        }
        r.threads = parse_number<std::size_t>(f[2], line_no);
        r.run_index = parse_number<std::size_t>(f[3], line_no);
        r.wall_time_ms = parse_number<double>(f[4], line_no);
        r.expanded = parse_number<std::uint64_t>(f[6], line_no);
        r.shared = parse_number<std::uint64_t>(f[7], line_no);
        r.program_text = f[8];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace bfgp
