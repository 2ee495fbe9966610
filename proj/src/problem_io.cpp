#include "bfgp/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace bfgp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        const auto end = pos == std::string_view::npos ? s.size() : pos;
        parts.push_back(trim(s.substr(start, end - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
            ++j;
        if (j > i)
            words.push_back(s.substr(i, j - i));
        i = j;
    }
    return words;
}

// Variable and action names; domain names may also contain '-' and '.'.
bool is_identifier(std::string_view s, bool allow_dash = false) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s) {
        const bool extra = allow_dash && (c == '-' || c == '.');
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || extra))
            return false;
    }
    return true;
}

std::optional<Value> parse_value(std::string_view s) {
    if (s == "true")
        return 1;
    if (s == "false")
        return 0;
    Value v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

int require_variable(const DomainSpec &domain, std::string_view name) {
    if (auto idx = domain.find_variable(name))
        return *idx;
    throw ModelError("unknown variable '" + std::string(name) + "'");
}

Expr parse_expr(const DomainSpec &domain, std::string_view text) {
    if (auto v = parse_value(text))
        return Expr{ExprKind::Const, -1, -1, *v};
    const auto plus = text.find('+');
    const auto minus = text.find('-');
    if (plus != std::string_view::npos) {
        const auto lhs = trim(text.substr(0, plus));
        const auto rhs = trim(text.substr(plus + 1));
        const int a = require_variable(domain, lhs);
        if (rhs == "1")
            return Expr{ExprKind::Inc, a, -1, 0};
        return Expr{ExprKind::Add, a, require_variable(domain, rhs), 0};
    }
    if (minus != std::string_view::npos && trim(text.substr(minus + 1)) == "1") {
        const auto lhs = trim(text.substr(0, minus));
        if (domain.find_variable(lhs))
            return Expr{ExprKind::Dec, require_variable(domain, lhs), -1, 0};
    }
    return Expr{ExprKind::Copy, require_variable(domain, text), -1, 0};
}

enum Section { kStart, kDomain, kVars, kActions, kAtoms, kInstances };

}  // namespace

ConditionAtom parse_atom(const DomainSpec &domain, std::string_view text) {
    text = trim(text);
    ConditionAtom atom;
    if (const auto lt = text.find('<'); lt != std::string_view::npos) {
        atom.form = AtomForm::Less;
        atom.lhs = require_variable(domain, trim(text.substr(0, lt)));
        atom.rhs = require_variable(domain, trim(text.substr(lt + 1)));
    } else if (const auto gt = text.find('>'); gt != std::string_view::npos) {
        if (trim(text.substr(gt + 1)) != "0")
            throw ModelError("atom '" + std::string(text) + "': only `v>0` is supported");
        atom.form = AtomForm::Positive;
        atom.lhs = require_variable(domain, trim(text.substr(0, gt)));
    } else if (const auto eq = text.find('='); eq != std::string_view::npos) {
        atom.lhs = require_variable(domain, trim(text.substr(0, eq)));
        const auto rhs = trim(text.substr(eq + 1));
        if (rhs == "0") {
            atom.form = AtomForm::IsZero;
        } else {
            atom.form = AtomForm::Equal;
            atom.rhs = require_variable(domain, rhs);
        }
    } else {
        atom.form = AtomForm::IsTrue;
        atom.lhs = require_variable(domain, text);
    }
    validate_atom(domain, atom);
    return atom;
}

ProblemSet parse_problem_set(std::istream &in) {
    ProblemSet problems;
    DomainSpec &domain = problems.domain;
    Section section = kStart;
    std::string raw;
    int line_no = 0;
    std::unordered_set<int> init_seen;
    std::unordered_set<int> goal_seen;

    auto advance = [&](Section next, std::string_view keyword) {
        if (next < section)
            throw ParseError(line_no, "'" + std::string(keyword) + "' appears after a later section");
        if (next != kDomain && section == kStart)
            throw ParseError(line_no, "missing 'domain' line before '" + std::string(keyword) + "'");
        section = next;
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto words = split_ws(line);
        const std::string_view keyword = words[0];

        try {
            if (keyword == "domain") {
                if (section != kStart)
                    throw ParseError(line_no, "duplicate 'domain' line");
                if (words.size() != 2 || !is_identifier(words[1], true))
                    throw ParseError(line_no, "expected 'domain <name>'");
                section = kDomain;
                domain.name = std::string(words[1]);
            } else if (keyword == "var") {
                advance(kVars, keyword);
                if (words.size() < 3 || !is_identifier(words[1]))
                    throw ParseError(line_no, "expected 'var <name> bool|int <max>'");
                VariableDecl decl;
                decl.name = std::string(words[1]);
                if (domain.find_variable(decl.name))
                    throw ParseError(line_no, "duplicate variable '" + decl.name + "'");
                if (words[2] == "bool" && words.size() == 3) {
                    decl.kind = VarKind::Bool;
                    decl.max_value = 1;
                } else if (words[2] == "int" && words.size() == 4) {
                    decl.kind = VarKind::Int;
                    const auto max = parse_value(words[3]);
                    if (!max || *max < 0)
                        throw ParseError(line_no, "invalid max for '" + decl.name + "'");
                    decl.max_value = *max;
                } else {
                    throw ParseError(line_no, "expected 'var <name> bool|int <max>'");
                }
                domain.variables.push_back(std::move(decl));
            } else if (keyword == "action") {
                advance(kActions, keyword);
                if (words.size() < 5 || words[2] != "guard")
                    throw ParseError(line_no, "expected 'action <name> guard ... effects ...'");
                ActionDecl action;
                action.name = std::string(words[1]);
                if (!is_identifier(action.name))
                    throw ParseError(line_no, "invalid action name '" + action.name + "'");
                if (domain.find_action(action.name))
                    throw ParseError(line_no, "duplicate action '" + action.name + "'");
                std::size_t i = 3;
                std::string guard_text;
                for (; i < words.size() && words[i] != "effects"; ++i)
                    guard_text += words[i];
                if (i == words.size())
                    throw ParseError(line_no, "action '" + action.name + "' has no 'effects'");
                std::string effects_text;
                for (++i; i < words.size(); ++i)
                    effects_text += words[i];
                if (!guard_text.empty() && guard_text != "-") {
                    for (auto part : split(guard_text, ','))
                        action.guard.push_back(parse_atom(domain, part));
                }
                if (!effects_text.empty() && effects_text != "-") {
                    std::unordered_set<int> assigned;
                    for (auto part : split(effects_text, ',')) {
                        const auto assign = part.find(":=");
                        if (assign == std::string_view::npos)
                            throw ParseError(line_no, "effect '" + std::string(part) + "' lacks ':='");
                        Effect effect;
                        effect.target = require_variable(domain, trim(part.substr(0, assign)));
                        effect.expr = parse_expr(domain, trim(part.substr(assign + 2)));
                        if (!assigned.insert(effect.target).second)
                            throw ParseError(line_no, "variable '" +
                                                          domain.variables[effect.target].name +
                                                          "' assigned twice");
                        action.effects.push_back(effect);
                    }
                }
                domain.actions.push_back(std::move(action));
            } else if (keyword == "atom") {
                advance(kAtoms, keyword);
                if (words.size() != 2)
                    throw ParseError(line_no, "expected 'atom <condition>'");
                domain.condition_atoms.push_back(parse_atom(domain, words[1]));
            } else if (keyword == "instance") {
                advance(kInstances, keyword);
                Instance inst;
                inst.id = static_cast<int>(problems.instances.size());
                inst.objects_note = std::string(trim(line.substr(keyword.size())));
                inst.initial.values.assign(domain.variables.size(), 0);
                problems.instances.push_back(std::move(inst));
                init_seen.clear();
                goal_seen.clear();
            } else if (keyword == "init" || keyword == "goal") {
                if (section != kInstances || problems.instances.empty())
                    throw ParseError(line_no, "'" + std::string(keyword) + "' outside an instance");
                Instance &inst = problems.instances.back();
                const bool is_init = keyword == "init";
                for (std::size_t i = 1; i < words.size(); ++i) {
                    const auto eq = words[i].find('=');
                    if (eq == std::string_view::npos)
                        throw ParseError(line_no, "expected <var>=<value>, got '" +
                                                      std::string(words[i]) + "'");
                    const int var = require_variable(domain, words[i].substr(0, eq));
                    const auto value = parse_value(words[i].substr(eq + 1));
                    const VariableDecl &decl = domain.variables[var];
                    if (!value || *value < 0 || *value > decl.upper_bound())
                        throw ParseError(line_no, std::string(is_init ? "initial value" : "goal constant") +
                                                      " for '" + decl.name + "' out of bounds");
                    auto &seen = is_init ? init_seen : goal_seen;
                    if (!seen.insert(var).second)
                        throw ParseError(line_no, "variable '" + decl.name + "' listed twice");
                    if (is_init)
                        inst.initial.values[var] = *value;
                    else
                        inst.goal.push_back(GoalAtom{var, *value});
                }
            } else {
                throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "'");
            }
        } catch (const ModelError &e) {
            throw ParseError(line_no, e.what());
        }
    }

    if (section == kStart)
        throw ParseError(line_no, "missing 'domain' section");
    if (problems.instances.empty())
        throw ParseError(line_no, "missing 'instance' section");
    try {
        validate_problem_set(problems);
    } catch (const ModelError &e) {
        throw ParseError(line_no, e.what());
    }
    return problems;
}

ProblemSet parse_problem_set_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_problem_set(in);
}

ProblemSet load_problem_set(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open problem file '" + path + "'");
    return parse_problem_set(in);
}

std::string serialize_problem_set(const ProblemSet &problems) {
    const DomainSpec &domain = problems.domain;
    std::ostringstream out;
    out << "domain " << domain.name << '\n';
    for (const VariableDecl &v : domain.variables) {
        if (v.kind == VarKind::Bool)
            out << "var " << v.name << " bool\n";
        else
            out << "var " << v.name << " int " << v.max_value << '\n';
    }
    for (const ActionDecl &a : domain.actions) {
        out << "action " << a.name << " guard ";
        if (a.guard.empty())
            out << '-';
        for (std::size_t i = 0; i < a.guard.size(); ++i)
            out << (i ? "," : "") << atom_to_string(domain, a.guard[i]);
        out << " effects ";
        if (a.effects.empty())
            out << '-';
        for (std::size_t i = 0; i < a.effects.size(); ++i) {
            const Effect &e = a.effects[i];
            out << (i ? "," : "") << domain.variables[e.target].name
                << ":=" << expr_to_string(domain, e.expr);
        }
        out << '\n';
    }
    for (const ConditionAtom &atom : domain.condition_atoms)
        out << "atom " << atom_to_string(domain, atom) << '\n';
    for (const Instance &inst : problems.instances) {
        out << "instance";
        if (!inst.objects_note.empty())
            out << ' ' << inst.objects_note;
        out << "\ninit";
        for (std::size_t i = 0; i < domain.variables.size(); ++i)
            out << ' ' << domain.variables[i].name << '=' << inst.initial.values[i];
        out << "\ngoal";
        for (const GoalAtom &g : inst.goal)
            out << ' ' << domain.variables[g.var].name << '=' << g.value;
        out << '\n';
    }
    return out.str();
}

}  // namespace bfgp
