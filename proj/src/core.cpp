#include "bfgp/core.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace bfgp {

std::optional<int> DomainSpec::find_variable(std::string_view var_name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == var_name)
            return static_cast<int>(i);
    }
    return std::nullopt;
}

std::optional<int> DomainSpec::find_action(std::string_view action_name) const {
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (actions[i].name == action_name)
            return static_cast<int>(i);
    }
    return std::nullopt;
}

bool eval_condition(const ConditionAtom &atom, std::span<const Value> state) {
    const Value lhs = state[atom.lhs];
    switch (atom.form) {
    case AtomForm::IsZero:
        return lhs == 0;
    case AtomForm::Positive:
        return lhs > 0;
    case AtomForm::Equal:
        return lhs == state[atom.rhs];
    case AtomForm::Less:
        return lhs < state[atom.rhs];
    case AtomForm::IsTrue:
        return lhs != 0;
    }
    return false;
}

static Value eval_expr(const Expr &expr, std::span<const Value> pre) {
    switch (expr.kind) {
    case ExprKind::Inc:
        return pre[expr.a] + 1;
    case ExprKind::Dec:
        return pre[expr.a] - 1;
    case ExprKind::Copy:
        return pre[expr.a];
    case ExprKind::Const:
        return expr.constant;
    case ExprKind::Add:
        return pre[expr.a] + pre[expr.b];
    }
    return 0;
}

bool apply_action_into(const DomainSpec &domain, const ActionDecl &action,
                       std::span<const Value> pre, std::span<Value> post) {
    for (const ConditionAtom &atom : action.guard) {
        if (!eval_condition(atom, pre))
            return false;
    }
    std::copy(pre.begin(), pre.end(), post.begin());
    for (const Effect &effect : action.effects) {
        const Value v = eval_expr(effect.expr, pre);
        if (v < 0 || v > domain.variables[effect.target].upper_bound())
            return false;
        post[effect.target] = v;
    }
    return true;
}

std::optional<State> apply_action(const DomainSpec &domain, const ActionDecl &action,
                                  const State &state) {
    State next{std::vector<Value>(state.values.size())};
    if (!apply_action_into(domain, action, state.values, next.values))
        return std::nullopt;
    return next;
}

bool is_goal(std::span<const Value> state, const Instance &instance) {
    return std::all_of(instance.goal.begin(), instance.goal.end(),
                       [&](const GoalAtom &g) { return state[g.var] == g.value; });
}

std::uint64_t goal_distance(std::span<const Value> state, const Instance &instance,
                            const DomainSpec &domain) {
    std::uint64_t total = 0;
    for (const GoalAtom &g : instance.goal) {
        const Value v = state[g.var];
        if (domain.variables[g.var].kind == VarKind::Bool)
            total += (v != g.value) ? 1 : 0;
        else
            total += static_cast<std::uint64_t>(v > g.value ? v - g.value : g.value - v);
    }
    return total;
}

namespace {

void check_operand(const DomainSpec &domain, int index, const char *where) {
    if (index < 0 || static_cast<std::size_t>(index) >= domain.variables.size())
        throw ModelError(std::string("undeclared variable index in ") + where);
}

void check_atom(const DomainSpec &domain, const ConditionAtom &atom, const char *where) {
    check_operand(domain, atom.lhs, where);
    const VarKind lhs_kind = domain.variables[atom.lhs].kind;
    switch (atom.form) {
    case AtomForm::IsZero:
    case AtomForm::Positive:
        if (lhs_kind != VarKind::Int)
            throw ModelError("atom '" + atom_to_string(domain, atom) + "' in " + where +
                             " needs an integer variable");
        break;
    case AtomForm::IsTrue:
        if (lhs_kind != VarKind::Bool)
            throw ModelError("atom '" + atom_to_string(domain, atom) + "' in " + where +
                             " needs a boolean variable");
        break;
    case AtomForm::Equal:
        check_operand(domain, atom.rhs, where);
        if (domain.variables[atom.rhs].kind != lhs_kind)
            throw ModelError("atom '" + atom_to_string(domain, atom) + "' in " + where +
                             " compares variables of different kinds");
        break;
    case AtomForm::Less:
        check_operand(domain, atom.rhs, where);
        if (lhs_kind != VarKind::Int || domain.variables[atom.rhs].kind != VarKind::Int)
            throw ModelError("atom '" + atom_to_string(domain, atom) + "' in " + where +
                             " needs integer variables");
        break;
    }
}

}  // namespace

void validate_atom(const DomainSpec &domain, const ConditionAtom &atom) {
    check_atom(domain, atom, "atom");
}

void validate_domain(const DomainSpec &domain) {
    std::unordered_set<std::string> names;
    for (const VariableDecl &v : domain.variables) {
        if (!names.insert(v.name).second)
            throw ModelError("duplicate variable '" + v.name + "'");
        if (v.kind == VarKind::Int && v.max_value < 0)
            throw ModelError("variable '" + v.name + "' has negative max");
    }
    names.clear();
    for (const ActionDecl &a : domain.actions) {
        if (!names.insert(a.name).second)
            throw ModelError("duplicate action '" + a.name + "'");
        for (const ConditionAtom &atom : a.guard)
            check_atom(domain, atom, "guard");
        std::unordered_set<int> assigned;
        for (const Effect &e : a.effects) {
            check_operand(domain, e.target, "effect");
            if (!assigned.insert(e.target).second)
                throw ModelError("action '" + a.name + "' assigns '" +
                                 domain.variables[e.target].name + "' twice");
            switch (e.expr.kind) {
            case ExprKind::Add:
                check_operand(domain, e.expr.b, "effect");
                [[fallthrough]];
            case ExprKind::Inc:
            case ExprKind::Dec:
            case ExprKind::Copy:
                check_operand(domain, e.expr.a, "effect");
                break;
            case ExprKind::Const:
                break;
            }
        }
    }
    for (const ConditionAtom &atom : domain.condition_atoms)
        check_atom(domain, atom, "atom list");
}

void validate_problem_set(const ProblemSet &problems) {
    const DomainSpec &domain = problems.domain;
    validate_domain(domain);
    if (problems.instances.empty())
        throw ModelError("problem set has no instances");
    for (const Instance &inst : problems.instances) {
        const std::string tag = "instance " + std::to_string(inst.id);
        if (inst.initial.values.size() != domain.variables.size())
            throw ModelError(tag + ": initial state has wrong length");
        for (std::size_t i = 0; i < domain.variables.size(); ++i) {
            const Value v = inst.initial.values[i];
            if (v < 0 || v > domain.variables[i].upper_bound())
                throw ModelError(tag + ": initial value of '" + domain.variables[i].name +
                                 "' out of bounds");
        }
        bool trivial = true;
        for (const GoalAtom &g : inst.goal) {
            check_operand(domain, g.var, "goal");
            if (g.value < 0 || g.value > domain.variables[g.var].upper_bound())
                throw ModelError(tag + ": goal constant for '" + domain.variables[g.var].name +
                                 "' out of bounds");
            if (inst.initial.values[g.var] != g.value)
                trivial = false;
        }
        if (!trivial && domain.condition_atoms.empty())
            throw ModelError(tag + ": non-trivial instance but the domain declares no atoms");
    }
}

std::string atom_to_string(const DomainSpec &domain, const ConditionAtom &atom) {
    auto name = [&](int i) {
        return (i >= 0 && static_cast<std::size_t>(i) < domain.variables.size())
                   ? domain.variables[i].name
                   : std::string("?");
    };
    switch (atom.form) {
    case AtomForm::IsZero:
        return name(atom.lhs) + "=0";
    case AtomForm::Positive:
        return name(atom.lhs) + ">0";
    case AtomForm::Equal:
        return name(atom.lhs) + "=" + name(atom.rhs);
    case AtomForm::Less:
        return name(atom.lhs) + "<" + name(atom.rhs);
    case AtomForm::IsTrue:
        return name(atom.lhs);
    }
    return "?";
}

std::string expr_to_string(const DomainSpec &domain, const Expr &expr) {
    auto name = [&](int i) { return domain.variables[i].name; };
    switch (expr.kind) {
    case ExprKind::Inc:
        return name(expr.a) + "+1";
    case ExprKind::Dec:
        return name(expr.a) + "-1";
    case ExprKind::Copy:
        return name(expr.a);
    case ExprKind::Const:
        return std::to_string(expr.constant);
    case ExprKind::Add:
        return name(expr.a) + "+" + name(expr.b);
    }
    return "?";
}

}  // namespace bfgp
