#pragma once

#include "bfgp/heuristic.hpp"
#include "bfgp/program.hpp"

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace bfgp {

struct SearchConfig {
    std::size_t n_lines = 4;
    std::size_t step_budget = kDefaultStepBudget;
    std::uint64_t node_budget = 0;     // max expansions, 0 = unlimited
    std::uint64_t time_budget_ms = 0;  // 0 = unlimited
    bool record_expanded = false;      // keep every expanded program in the report

    void validate() const;  // throws std::invalid_argument
};

struct SearchNode {
    Program program;
    EvaluationCost cost;
};

enum class SearchStatus { Solved, Exhausted, BudgetExceeded };

const char *to_string(SearchStatus status);

// One node handed from one worker to another (sharing strategy only).
struct ShareEvent {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint64_t child_primary = 0;
    std::uint64_t last_expanded_primary = 0;
};

struct SolutionReport {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<Program> program;
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;  // includes the root and pruned children
    std::uint64_t pruned = 0;     // children (or root) with infinite cost
    std::uint64_t shared = 0;     // nodes sent to another worker
    std::uint64_t received = 0;   // nodes taken from an inbox
    std::uint64_t residual = 0;   // nodes still open when the search stopped
    double wall_time_ms = 0.0;
    std::vector<Program> expanded_programs;  // only with record_expanded
    std::vector<ShareEvent> share_log;       // only with ParallelConfig::trace_sharing
};

/*
  Instructions that may be placed at `line`: every action, every
  goto(target, atom) with target != line, then end. The order is fixed.
*/
std::vector<Instruction> candidate_instructions(const ProblemSet &problems, std::size_t line,
                                                std::size_t n_lines);

struct ExpansionCounts {
    std::uint64_t generated = 0;
    std::uint64_t pruned = 0;
};

/*
  Children of `node`: one per candidate placed at its lowest Empty line,
  evaluated, infinite-cost ones dropped. `next_seq` supplies tiebreak_seq
  values in generation order.
*/
std::vector<SearchNode> successors(const SearchNode &node, const ProblemSet &problems,
                                   const SearchConfig &config, std::uint64_t &next_seq,
                                   ExpansionCounts *counts = nullptr);

struct NodeOrder {
    bool operator()(const SearchNode &a, const SearchNode &b) const { return b.cost < a.cost; }
};

class OpenList {
public:
    void push(SearchNode node) { heap_.push(std::move(node)); }
    SearchNode pop();
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    // Removes every node, best first.
    std::vector<SearchNode> drain();

private:
    std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> heap_;
};

/*
  Greedy best-first frontier search over partially specified programs. No
  closed list: the left-to-right successor rule never generates a program
  twice. This class owns one open list and is reused by the parallel
  strategies, one instance per worker.
*/
class FrontierSearch {
public:
    FrontierSearch(const ProblemSet &problems, const SearchConfig &config);

    // Evaluates and pushes the blank program; false when it is pruned.
    bool push_root();
    void push(SearchNode node) { open_.push(std::move(node)); }
    bool open_empty() const { return open_.empty(); }
    std::size_t open_size() const { return open_.size(); }

    // Pops the best node and counts it as expanded.
    SearchNode pop();
    // The validated solution carried by `node`, if any.
    std::optional<Program> solution_of(const SearchNode &node) const;
    std::vector<SearchNode> expand(const SearchNode &node);

    std::vector<SearchNode> drain_open() { return open_.drain(); }

    std::uint64_t next_seq() const { return next_seq_; }
    void set_next_seq(std::uint64_t seq) { next_seq_ = seq; }

    const ProblemSet &problems() const { return problems_; }
    const SearchConfig &config() const { return config_; }

    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::uint64_t pruned = 0;
    std::vector<Program> expanded_programs;

private:
    const ProblemSet &problems_;
    SearchConfig config_;
    OpenList open_;
    std::uint64_t next_seq_ = 0;
    std::vector<std::vector<Instruction>> candidates_;
};

SolutionReport bfgp_search(const ProblemSet &problems, const SearchConfig &config);

}  // namespace bfgp
