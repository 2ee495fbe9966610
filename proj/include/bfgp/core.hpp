#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bfgp {

using Value = std::int32_t;

enum class VarKind : std::uint8_t { Bool, Int };

struct VariableDecl {
    std::string name;
    VarKind kind = VarKind::Int;
    Value max_value = 0;  // inclusive; 1 for Bool

    Value upper_bound() const { return kind == VarKind::Bool ? 1 : max_value; }
    bool operator==(const VariableDecl &) const = default;
};

enum class AtomForm : std::uint8_t {
    IsZero,    // v = 0
    Positive,  // v > 0
    Equal,     // v1 = v2
    Less,      // v1 < v2
    IsTrue,    // b
};

// Operands are indices into DomainSpec::variables.
struct ConditionAtom {
    AtomForm form = AtomForm::IsZero;
    int lhs = 0;
    int rhs = -1;

    bool operator==(const ConditionAtom &) const = default;
};

enum class ExprKind : std::uint8_t { Inc, Dec, Copy, Const, Add };

struct Expr {
    ExprKind kind = ExprKind::Const;
    int a = -1;
    int b = -1;
    Value constant = 0;

    bool operator==(const Expr &) const = default;
};

struct Effect {
    int target = 0;
    Expr expr;

    bool operator==(const Effect &) const = default;
};

struct ActionDecl {
    std::string name;
    std::vector<ConditionAtom> guard;
    std::vector<Effect> effects;

    bool operator==(const ActionDecl &) const = default;
};

struct DomainSpec {
    std::string name;
    std::vector<VariableDecl> variables;
    std::vector<ActionDecl> actions;
    std::vector<ConditionAtom> condition_atoms;

    std::optional<int> find_variable(std::string_view var_name) const;
    std::optional<int> find_action(std::string_view action_name) const;
    std::size_t num_variables() const { return variables.size(); }

    bool operator==(const DomainSpec &) const = default;
};

struct State {
    std::vector<Value> values;

    bool operator==(const State &) const = default;
};

struct GoalAtom {
    int var = 0;
    Value value = 0;

    bool operator==(const GoalAtom &) const = default;
};

struct Instance {
    int id = 0;
    std::string objects_note;
    State initial;
    std::vector<GoalAtom> goal;

    bool operator==(const Instance &) const = default;
};

struct ProblemSet {
    DomainSpec domain;
    std::vector<Instance> instances;

    bool operator==(const ProblemSet &) const = default;
};

// Raised when a domain or instance breaks a structural invariant.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool eval_condition(const ConditionAtom &atom, std::span<const Value> state);
inline bool eval_condition(const ConditionAtom &atom, const State &state) {
    return eval_condition(atom, std::span<const Value>(state.values));
}

/*
  Applies all effects simultaneously against `pre` and writes the successor
  into `post` (which must have the same length). Returns false when the guard
  does not hold or an effect leaves its variable's range; `post` is then
  unspecified.
*/
bool apply_action_into(const DomainSpec &domain, const ActionDecl &action,
                       std::span<const Value> pre, std::span<Value> post);

std::optional<State> apply_action(const DomainSpec &domain, const ActionDecl &action,
                                  const State &state);

bool is_goal(std::span<const Value> state, const Instance &instance);
inline bool is_goal(const State &state, const Instance &instance) {
    return is_goal(std::span<const Value>(state.values), instance);
}

std::uint64_t goal_distance(std::span<const Value> state, const Instance &instance,
                            const DomainSpec &domain);
inline std::uint64_t goal_distance(const State &state, const Instance &instance,
                                   const DomainSpec &domain) {
    return goal_distance(std::span<const Value>(state.values), instance, domain);
}

// Throws ModelError describing the first violated invariant.
void validate_atom(const DomainSpec &domain, const ConditionAtom &atom);
void validate_domain(const DomainSpec &domain);
void validate_problem_set(const ProblemSet &problems);

std::string atom_to_string(const DomainSpec &domain, const ConditionAtom &atom);
std::string expr_to_string(const DomainSpec &domain, const Expr &expr);

}  // namespace bfgp
