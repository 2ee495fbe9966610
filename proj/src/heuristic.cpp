#include "bfgp/heuristic.hpp"

namespace bfgp {

EvaluationCost evaluate(const Program &program, const ProblemSet &problems,
                        std::size_t step_budget) {
    EvaluationCost cost;
    cost.tiebreak_lines = static_cast<std::uint32_t>(program.programmed_lines());
    for (const Instance &inst : problems.instances) {
        const ExecutionSummary r = run_summary(program, problems.domain, inst, step_budget);
        if (r.status == ExecutionSummary::Status::Failed) {
            cost.primary = kInfiniteCost;
            return cost;
        }
        cost.primary += r.distance;
    }
    return cost;
}

}  // namespace bfgp
