#include "bfgp/search.hpp"

#include <chrono>
#include <stdexcept>

namespace bfgp {

void SearchConfig::validate() const {
    if (n_lines < 1)
        throw std::invalid_argument("n_lines must be at least 1");
    if (n_lines > 0xffff)
        throw std::invalid_argument("n_lines too large");
}

const char *to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::Solved:
        return "solved";
    case SearchStatus::Exhausted:
        return "exhausted";
    case SearchStatus::BudgetExceeded:
        return "budget-exceeded";
    }
    return "?";
}

std::vector<Instruction> candidate_instructions(const ProblemSet &problems, std::size_t line,
                                                std::size_t n_lines) {
    const DomainSpec &domain = problems.domain;
    std::vector<Instruction> out;
    out.reserve(domain.actions.size() + n_lines * domain.condition_atoms.size() + 1);
    for (std::size_t a = 0; a < domain.actions.size(); ++a)
        out.push_back(Instruction::action(static_cast<int>(a)));
    for (std::size_t target = 0; target < n_lines; ++target) {
        if (target == line)
            continue;
        for (std::size_t atom = 0; atom < domain.condition_atoms.size(); ++atom)
            out.push_back(Instruction::jump(static_cast<int>(target), static_cast<int>(atom)));
    }
    out.push_back(Instruction::end());
    return out;
}

namespace {

std::vector<SearchNode> expand_with(const SearchNode &node, const ProblemSet &problems,
                                    const SearchConfig &config,
                                    const std::vector<Instruction> &candidates,
                                    std::uint64_t &next_seq, ExpansionCounts &counts) {
    std::vector<SearchNode> children;
    const std::size_t line = node.program.first_empty();
    if (line >= node.program.size())
        return children;
    children.reserve(candidates.size());
    Program child = node.program;
    for (const Instruction &ins : candidates) {
        child.lines[line] = ins;
        ++counts.generated;
        EvaluationCost cost = evaluate(child, problems, config.step_budget);
        if (cost.infinite()) {
            ++counts.pruned;
            continue;
        }
        cost.tiebreak_seq = next_seq++;
        children.push_back(SearchNode{child, cost});
    }
    return children;
}

}  // namespace

std::vector<SearchNode> successors(const SearchNode &node, const ProblemSet &problems,
                                   const SearchConfig &config, std::uint64_t &next_seq,
                                   ExpansionCounts *counts) {
    ExpansionCounts local;
    const std::size_t line = node.program.first_empty();
    if (line >= node.program.size())
        return {};
    auto children = expand_with(node, problems, config,
                                candidate_instructions(problems, line, node.program.size()),
                                next_seq, local);
    if (counts) {
        counts->generated += local.generated;
        counts->pruned += local.pruned;
    }
    return children;
}

SearchNode OpenList::pop() {
    // priority_queue::top is const; the node is moved out before pop.
    SearchNode node = std::move(const_cast<SearchNode &>(heap_.top()));
    heap_.pop();
    return node;
}

std::vector<SearchNode> OpenList::drain() {
    std::vector<SearchNode> out;
    out.reserve(heap_.size());
    while (!heap_.empty())
        out.push_back(pop());
    return out;
}

FrontierSearch::FrontierSearch(const ProblemSet &problems, const SearchConfig &config)
    : problems_(problems), config_(config) {
    config_.validate();
    candidates_.reserve(config_.n_lines);
    for (std::size_t line = 0; line < config_.n_lines; ++line)
        candidates_.push_back(candidate_instructions(problems_, line, config_.n_lines));
}

bool FrontierSearch::push_root() {
    SearchNode root{Program::blank(config_.n_lines), {}};
    root.cost = evaluate(root.program, problems_, config_.step_budget);
    ++generated;
    if (root.cost.infinite()) {
        ++pruned;
        return false;
    }
    root.cost.tiebreak_seq = next_seq_++;
    open_.push(std::move(root));
    return true;
}

SearchNode FrontierSearch::pop() {
    SearchNode node = open_.pop();
    ++expanded;
    if (config_.record_expanded)
        expanded_programs.push_back(node.program);
    return node;
}

std::optional<Program> FrontierSearch::solution_of(const SearchNode &node) const {
    if (node.cost.primary != 0)
        return std::nullopt;
    // Zero distance means every instance either solved or halted in a goal
    // state, so closing the remaining Empty lines with End solves them all.
    Program candidate = node.program.completed_with_end();
    if (!is_solution(candidate, problems_, config_.step_budget))
        return std::nullopt;
    return candidate;
}

std::vector<SearchNode> FrontierSearch::expand(const SearchNode &node) {
    const std::size_t line = node.program.first_empty();
    if (line >= node.program.size())
        return {};
    ExpansionCounts counts;
    auto children = expand_with(node, problems_, config_, candidates_[line], next_seq_, counts);
    generated += counts.generated;
    pruned += counts.pruned;
    return children;
}

SolutionReport bfgp_search(const ProblemSet &problems, const SearchConfig &config) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    FrontierSearch search(problems, config);
    SolutionReport report;
    report.status = SearchStatus::Exhausted;

    search.push_root();
    while (!search.open_empty()) {
        if (config.node_budget && search.expanded >= config.node_budget) {
            report.status = SearchStatus::BudgetExceeded;
            break;
        }
        if (config.time_budget_ms &&
            Clock::now() - start >= std::chrono::milliseconds(config.time_budget_ms)) {
            report.status = SearchStatus::BudgetExceeded;
            break;
        }
        SearchNode node = search.pop();
        if (auto solution = search.solution_of(node)) {
            report.status = SearchStatus::Solved;
            report.program = std::move(solution);
            break;
        }
        for (SearchNode &child : search.expand(node))
            search.push(std::move(child));
    }

    report.expanded = search.expanded;
    report.generated = search.generated;
    report.pruned = search.pruned;
    report.residual = search.open_size();
    report.expanded_programs = std::move(search.expanded_programs);
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
}

}  // namespace bfgp
