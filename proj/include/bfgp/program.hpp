#pragma once

#include "bfgp/core.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bfgp {

inline constexpr std::size_t kDefaultStepBudget = 10'000;

enum class InstrKind : std::uint8_t { Empty, Action, Goto, End };

/*
  One program line. `index` is an action index for Action and a
  condition-atom index (into DomainSpec::condition_atoms) for Goto.
  A goto jumps to `target` when its atom is FALSE and falls through otherwise.
*/
struct Instruction {
    InstrKind kind = InstrKind::Empty;
    std::uint16_t index = 0;
    std::uint16_t target = 0;

    static Instruction empty() { return {}; }
    static Instruction end() { return {InstrKind::End, 0, 0}; }
    static Instruction action(int a) { return {InstrKind::Action, static_cast<std::uint16_t>(a), 0}; }
    static Instruction jump(int target_line, int atom) {
        return {InstrKind::Goto, static_cast<std::uint16_t>(atom),
                static_cast<std::uint16_t>(target_line)};
    }

    bool operator==(const Instruction &) const = default;
};

struct Program {
    std::vector<Instruction> lines;

    Program() = default;
    explicit Program(std::vector<Instruction> l) : lines(std::move(l)) {}

    // n lines, all Empty except the final End.
    static Program blank(std::size_t n);

    std::size_t size() const { return lines.size(); }
    bool fully_specified() const;
    std::size_t programmed_lines() const;
    // Lowest-index Empty line, or size() when there is none.
    std::size_t first_empty() const;
    // Copy with every Empty line replaced by End.
    Program completed_with_end() const;

    bool operator==(const Program &) const = default;
};

struct ProgramHash {
    std::size_t operator()(const Program &p) const noexcept;
};

enum class ViolationKind { SelfGoto, TargetOutOfRange, LastLineNotEnd, NonContiguousPrefix, UnknownAction, UnknownAtom, EmptyProgram };

struct Violation {
    ViolationKind kind;
    std::size_t line;
    std::string message;
};

std::vector<Violation> validate_structure(const Program &program, const DomainSpec &domain);

enum class FailureReason { InapplicableAction, InfiniteLoop, BudgetExceeded, GoalMiss };

const char *to_string(FailureReason reason);

struct Solved {
    std::vector<int> plan;  // action indices
    State final_state;
};

struct HaltedAtEmpty {
    std::size_t line;
    State state;
};

struct Failed {
    FailureReason reason;
    std::size_t line;  // program line where the failure was detected
};

struct ExecutionOutcome {
    std::variant<Solved, HaltedAtEmpty, Failed> result;
    std::size_t steps = 0;

    bool solved() const { return std::holds_alternative<Solved>(result); }
    bool halted() const { return std::holds_alternative<HaltedAtEmpty>(result); }
    bool failed() const { return std::holds_alternative<Failed>(result); }
};

ExecutionOutcome run(const Program &program, const DomainSpec &domain, const Instance &instance,
                     std::size_t step_budget = kDefaultStepBudget);

// Same execution as run() without materializing the plan or halt state.
struct ExecutionSummary {
    enum class Status : std::uint8_t { Solved, Halted, Failed } status;
    FailureReason reason = FailureReason::GoalMiss;  // meaningful when Failed
    std::size_t line = 0;                           // halt or failure line
    std::uint64_t distance = 0;                     // goal distance at the halt state
    std::size_t steps = 0;
};

ExecutionSummary run_summary(const Program &program, const DomainSpec &domain,
                             const Instance &instance, std::size_t step_budget);

// With `stop_on_failure`, evaluation ends after the first Failed outcome.
std::vector<ExecutionOutcome> run_all(const Program &program, const ProblemSet &problems,
                                      std::size_t step_budget = kDefaultStepBudget,
                                      bool stop_on_failure = false);

// Requires a fully specified program; throws std::invalid_argument otherwise.
bool is_solution(const Program &program, const ProblemSet &problems,
                 std::size_t step_budget = kDefaultStepBudget);

/*
  Program text: one instruction per line (or separated by ';'):
    act <name> | goto <line> <atom> | end | --
  Goto atoms must be among the domain's declared condition atoms.
*/
Program parse_program(std::string_view text, const DomainSpec &domain);
Program load_program(const std::string &path, const DomainSpec &domain);
std::string format_instruction(const Instruction &instr, const DomainSpec &domain);
std::string format_program(const Program &program, const DomainSpec &domain);
std::string format_program_inline(const Program &program, const DomainSpec &domain);

}  // namespace bfgp
