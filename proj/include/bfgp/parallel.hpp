#pragma once

#include "bfgp/search.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bfgp {

enum class ParallelStrategy { Independent, Sharing };

struct ParallelConfig {
    SearchConfig base;
    std::size_t threads = 1;
    std::size_t seed_per_thread = 1;  // N: open nodes per thread before the parallel phase
    ParallelStrategy strategy = ParallelStrategy::Independent;
    bool trace_sharing = false;       // fill SolutionReport::share_log

    void validate() const;
};

/*
  Unbounded multi-producer single-consumer queue (Vyukov). push() is
  wait-free; try_pop() may only be called by the owning consumer. A push
  that is still in progress can be invisible to try_pop() for a moment.
*/
template <typename T>
class MpscQueue {
public:
    MpscQueue() : head_(new Cell), tail_(head_.load()) {}
    MpscQueue(const MpscQueue &) = delete;
    MpscQueue &operator=(const MpscQueue &) = delete;
    ~MpscQueue() {
        while (try_pop()) {
        }
        delete tail_;
    }

    void push(T value) {
        Cell *cell = new Cell;
        cell->value.emplace(std::move(value));
        Cell *prev = head_.exchange(cell, std::memory_order_acq_rel);
        prev->next.store(cell, std::memory_order_release);
    }

    std::optional<T> try_pop() {
        Cell *tail = tail_;
        Cell *next = tail->next.load(std::memory_order_acquire);
        if (!next)
            return std::nullopt;
        std::optional<T> out(std::in_place, std::move(*next->value));
        next->value.reset();
        tail_ = next;
        delete tail;
        return out;
    }

private:
    struct Cell {
        std::atomic<Cell *> next{nullptr};
        std::optional<T> value;
    };

    std::atomic<Cell *> head_;  // producers
    Cell *tail_;                // consumer
};

using Inbox = MpscQueue<SearchNode>;

/*
  State shared by all workers. The stop flag only goes false -> true and the
  result slot is written at most once (first writer wins).
*/
class SharedControl {
public:
    explicit SharedControl(std::size_t threads) : threads_(threads) {}

    bool stopped() const { return stop_flag.load(std::memory_order_relaxed); }

    // Records the outcome and raises the stop flag; only the first call counts.
    bool finish(SearchStatus status, std::optional<Program> program = std::nullopt);
    SearchStatus status() const { return status_; }
    const std::optional<Program> &result() const { return result_; }

    /*
      Exhaustion test run by an idle worker: every worker idle and every sent
      node received, confirmed by a second read of the counters.
    */
    bool quiescent() const;

    std::atomic<bool> stop_flag{false};
    std::atomic<std::uint64_t> sent_count{0};
    std::atomic<std::uint64_t> received_count{0};
    std::atomic<std::size_t> idle_count{0};
    std::atomic<std::uint64_t> expanded{0};

private:
    std::size_t threads_;
    std::atomic<bool> claimed_{false};
    SearchStatus status_ = SearchStatus::Exhausted;
    std::optional<Program> result_;
};

struct SeedResult {
    enum class Kind { Open, Solved, Exhausted, BudgetExceeded } kind = Kind::Open;
    std::vector<SearchNode> open;  // best first
    std::optional<Program> solution;
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::uint64_t pruned = 0;
    std::uint64_t next_seq = 0;
    std::vector<Program> expanded_programs;
};

// Sequential expansion (at least one) until the open list holds N * t nodes.
SeedResult seed_phase(const ProblemSet &problems, const ParallelConfig &config);

// Node at rank r goes to list r mod t.
std::vector<std::vector<SearchNode>> partition(std::vector<SearchNode> open, std::size_t t);

// True when the child is at least as good as the last expansion (primary only).
bool share_decision(const EvaluationCost &child_cost, const EvaluationCost &last_expanded_cost);

// Cycles over {0..t-1} \ {self}; returns (recipient, advanced cursor). Needs t >= 2.
std::pair<std::size_t, std::size_t> next_recipient(std::size_t self, std::size_t cursor,
                                                   std::size_t t);

SolutionReport strategy1_search(const ProblemSet &problems, const ParallelConfig &config);
SolutionReport strategy2_search(const ProblemSet &problems, const ParallelConfig &config);

// Dispatches on config.strategy.
SolutionReport parallel_search(const ProblemSet &problems, const ParallelConfig &config);

}  // namespace bfgp
