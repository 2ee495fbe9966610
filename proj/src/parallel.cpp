#include "bfgp/parallel.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>
#include <thread>

namespace bfgp {

using Clock = std::chrono::steady_clock;

void ParallelConfig::validate() const {
    base.validate();
    if (threads < 1)
        throw std::invalid_argument("thread count must be at least 1");
    if (seed_per_thread < 1)
        throw std::invalid_argument("seed nodes per thread must be at least 1");
}

bool SharedControl::finish(SearchStatus status, std::optional<Program> program) {
    bool expected = false;
    if (!claimed_.compare_exchange_strong(expected, true, std::memory_order_acq_rel))
        return false;
    status_ = status;
    result_ = std::move(program);
    stop_flag.store(true, std::memory_order_release);
    return true;
}

bool SharedControl::quiescent() const {
    const std::uint64_t r1 = received_count.load();
    const std::uint64_t s1 = sent_count.load();
    if (s1 != r1)
        return false;
    if (idle_count.load() != threads_)
        return false;
    const std::uint64_t s2 = sent_count.load();
    const std::uint64_t r2 = received_count.load();
    return s2 == s1 && r2 == r1;
}

SeedResult seed_phase(const ProblemSet &problems, const ParallelConfig &config) {
    config.validate();
    const auto start = Clock::now();
    FrontierSearch search(problems, config.base);
    SeedResult out;
    const std::size_t target = config.seed_per_thread * config.threads;

    search.push_root();
    bool done = false;
    while (!done) {
        if (search.open_empty()) {
            out.kind = SeedResult::Kind::Exhausted;
            break;
        }
        if ((config.base.node_budget && search.expanded >= config.base.node_budget) ||
            (config.base.time_budget_ms &&
             Clock::now() - start >= std::chrono::milliseconds(config.base.time_budget_ms))) {
            out.kind = SeedResult::Kind::BudgetExceeded;
            break;
        }
        SearchNode node = search.pop();
        if (auto solution = search.solution_of(node)) {
            out.kind = SeedResult::Kind::Solved;
            out.solution = std::move(solution);
            break;
        }
        for (SearchNode &child : search.expand(node))
            search.push(std::move(child));
        done = search.open_size() >= target;
    }
    if (out.kind == SeedResult::Kind::Open)
        out.open = search.drain_open();
    out.expanded = search.expanded;
    out.generated = search.generated;
    out.pruned = search.pruned;
    out.next_seq = search.next_seq();
    out.expanded_programs = std::move(search.expanded_programs);
    return out;
}

std::vector<std::vector<SearchNode>> partition(std::vector<SearchNode> open, std::size_t t) {
    if (t == 0)
        throw std::invalid_argument("partition needs at least one list");
    std::vector<std::vector<SearchNode>> parts(t);
    for (std::size_t rank = 0; rank < open.size(); ++rank)
        parts[rank % t].push_back(std::move(open[rank]));
    return parts;
}

bool share_decision(const EvaluationCost &child_cost, const EvaluationCost &last_expanded_cost) {
    return child_cost.primary <= last_expanded_cost.primary;
}

std::pair<std::size_t, std::size_t> next_recipient(std::size_t self, std::size_t cursor,
                                                   std::size_t t) {
    if (t < 2)
        throw std::invalid_argument("next_recipient needs at least two threads");
    const std::size_t recipient = (self + 1 + cursor % (t - 1)) % t;
    return {recipient, (cursor + 1) % (t - 1)};
}

namespace {

struct WorkerStats {
    std::uint64_t shared = 0;
    std::uint64_t received = 0;
    std::vector<ShareEvent> share_log;
};

struct Run {
    const ProblemSet &problems;
    const ParallelConfig &config;
    Clock::time_point start;
    SharedControl control;
    std::vector<std::unique_ptr<FrontierSearch>> engines;
    std::vector<std::unique_ptr<Inbox>> inboxes;
    std::vector<WorkerStats> stats;

    Run(const ProblemSet &p, const ParallelConfig &c, Clock::time_point t0)
        : problems(p), config(c), start(t0), control(c.threads) {}

    bool over_budget() const {
        const SearchConfig &base = config.base;
        if (base.node_budget && control.expanded.load(std::memory_order_relaxed) >= base.node_budget)
            return true;
        return base.time_budget_ms &&
               Clock::now() - start >= std::chrono::milliseconds(base.time_budget_ms);
    }
};

SolutionReport report_from_seed(SeedResult &seed, Clock::time_point start) {
    SolutionReport report;
    switch (seed.kind) {
    case SeedResult::Kind::Solved:
        report.status = SearchStatus::Solved;
        report.program = std::move(seed.solution);
        break;
    case SeedResult::Kind::BudgetExceeded:
        report.status = SearchStatus::BudgetExceeded;
        break;
    default:
        report.status = SearchStatus::Exhausted;
        break;
    }
    report.expanded = seed.expanded;
    report.generated = seed.generated;
    report.pruned = seed.pruned;
    report.expanded_programs = std::move(seed.expanded_programs);
    report.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
}

// Shared by both strategies: after a pop, either stop on a solution or
// return the children to place.
bool handle_solution(Run &run, FrontierSearch &engine, const SearchNode &node) {
    if (auto solution = engine.solution_of(node)) {
        run.control.finish(SearchStatus::Solved, std::move(solution));
        return true;
    }
    return false;
}

void independent_worker(Run &run, std::size_t self) {
    FrontierSearch &engine = *run.engines[self];
    while (!run.control.stopped() && !engine.open_empty()) {
        if (run.over_budget()) {
            run.control.finish(SearchStatus::BudgetExceeded);
            return;
        }
        SearchNode node = engine.pop();
        run.control.expanded.fetch_add(1, std::memory_order_relaxed);
        if (handle_solution(run, engine, node))
            return;
        for (SearchNode &child : engine.expand(node))
            engine.push(std::move(child));
    }
}

void sharing_worker(Run &run, std::size_t self) {
    FrontierSearch &engine = *run.engines[self];
    Inbox &inbox = *run.inboxes[self];
    WorkerStats &stats = run.stats[self];
    SharedControl &control = run.control;
    const std::size_t t = run.config.threads;
    bool idle = false;
    std::size_t cursor = 0;
    std::uint32_t idle_spins = 0;

    while (!control.stopped()) {
        while (auto node = inbox.try_pop()) {
            // Leave the idle set before the receive becomes visible.
            if (idle) {
                idle = false;
                control.idle_count.fetch_sub(1);
            }
            engine.push(std::move(*node));
            control.received_count.fetch_add(1);
            ++stats.received;
        }
        if (engine.open_empty()) {
            if (!idle) {
                idle = true;
                control.idle_count.fetch_add(1);
            }
            if (control.quiescent()) {
                control.finish(SearchStatus::Exhausted);
                return;
            }
            if (++idle_spins > 64)
                std::this_thread::sleep_for(std::chrono::microseconds(50));
            else
                std::this_thread::yield();
            continue;
        }
        idle_spins = 0;
        if (run.over_budget()) {
            control.finish(SearchStatus::BudgetExceeded);
            return;
        }
        SearchNode node = engine.pop();
        control.expanded.fetch_add(1, std::memory_order_relaxed);
        if (handle_solution(run, engine, node))
            return;
        for (SearchNode &child : engine.expand(node)) {
            if (t >= 2 && share_decision(child.cost, node.cost)) {
                auto [recipient, next_cursor] = next_recipient(self, cursor, t);
                cursor = next_cursor;
                if (run.config.trace_sharing)
                    stats.share_log.push_back({static_cast<std::uint32_t>(self),
                                               static_cast<std::uint32_t>(recipient),
                                               child.cost.primary, node.cost.primary});
                control.sent_count.fetch_add(1);
                run.inboxes[recipient]->push(std::move(child));
                ++stats.shared;
            } else {
                engine.push(std::move(child));
            }
        }
    }
}

SolutionReport run_parallel(const ProblemSet &problems, const ParallelConfig &config,
                            bool sharing) {
    config.validate();
    const auto start = Clock::now();
    SeedResult seed = seed_phase(problems, config);
    if (seed.kind != SeedResult::Kind::Open)
        return report_from_seed(seed, start);

    const std::size_t t = config.threads;
    Run run(problems, config, start);
    run.control.expanded.store(seed.expanded);
    run.stats.resize(t);
    auto parts = partition(std::move(seed.open), t);
    for (std::size_t i = 0; i < t; ++i) {
        auto engine = std::make_unique<FrontierSearch>(problems, config.base);
        engine->set_next_seq(seed.next_seq);
        for (SearchNode &node : parts[i])
            engine->push(std::move(node));
        run.engines.push_back(std::move(engine));
        run.inboxes.push_back(std::make_unique<Inbox>());
    }

    {
        std::vector<std::jthread> workers;
        workers.reserve(t);
        for (std::size_t i = 0; i < t; ++i) {
            if (sharing)
                workers.emplace_back([&run, i] { sharing_worker(run, i); });
            else
                workers.emplace_back([&run, i] { independent_worker(run, i); });
        }
    }

    SolutionReport report;
    report.status = run.control.stopped() ? run.control.status() : SearchStatus::Exhausted;
    report.program = run.control.result();
    report.expanded = seed.expanded;
    report.generated = seed.generated;
    report.pruned = seed.pruned;
    report.expanded_programs = std::move(seed.expanded_programs);
    for (std::size_t i = 0; i < t; ++i) {
        FrontierSearch &engine = *run.engines[i];
        report.expanded += engine.expanded;
        report.generated += engine.generated;
        report.pruned += engine.pruned;
        report.residual += engine.open_size();
        while (run.inboxes[i]->try_pop())
            ++report.residual;
        report.shared += run.stats[i].shared;
        report.received += run.stats[i].received;
        for (Program &p : engine.expanded_programs)
            report.expanded_programs.push_back(std::move(p));
        for (const ShareEvent &e : run.stats[i].share_log)
            report.share_log.push_back(e);
    }
    report.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
}

}  // namespace

SolutionReport strategy1_search(const ProblemSet &problems, const ParallelConfig &config) {
    if (config.strategy != ParallelStrategy::Independent)
        throw std::invalid_argument("strategy1_search needs the Independent strategy");
    return run_parallel(problems, config, false);
}

SolutionReport strategy2_search(const ProblemSet &problems, const ParallelConfig &config) {
    if (config.strategy != ParallelStrategy::Sharing)
        throw std::invalid_argument("strategy2_search needs the Sharing strategy");
    return run_parallel(problems, config, true);
}

SolutionReport parallel_search(const ProblemSet &problems, const ParallelConfig &config) {
    return config.strategy == ParallelStrategy::Sharing ? strategy2_search(problems, config)
                                                        : strategy1_search(problems, config);
}

}  // namespace bfgp
