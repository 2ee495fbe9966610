#pragma once

#include "bfgp/program.hpp"

#include <compare>
#include <cstdint>
#include <limits>

namespace bfgp {

inline constexpr std::uint64_t kInfiniteCost = std::numeric_limits<std::uint64_t>::max();

/*
  Open-list key. Ordered by `primary` (summed goal distance of the halt
  states, kInfiniteCost when any instance fails), then by fewer programmed
  lines, then by earlier insertion.
*/
struct EvaluationCost {
    std::uint64_t primary = 0;
    std::uint32_t tiebreak_lines = 0;
    std::uint64_t tiebreak_seq = 0;

    bool infinite() const { return primary == kInfiniteCost; }

    std::strong_ordering operator<=>(const EvaluationCost &other) const {
        if (auto c = primary <=> other.primary; c != 0)
            return c;
        if (auto c = tiebreak_lines <=> other.tiebreak_lines; c != 0)
            return c;
        return tiebreak_seq <=> other.tiebreak_seq;
    }
    bool operator==(const EvaluationCost &) const = default;
};

inline std::strong_ordering compare(const EvaluationCost &a, const EvaluationCost &b) {
    return a <=> b;
}

// tiebreak_seq is left at 0; the search assigns it.
EvaluationCost evaluate(const Program &program, const ProblemSet &problems,
                        std::size_t step_budget = kDefaultStepBudget);

}  // namespace bfgp
