#include "bfgp/program.hpp"

#include "bfgp/problem_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bfgp {

Program Program::blank(std::size_t n) {
    Program p;
    p.lines.assign(n, Instruction::empty());
    if (n > 0)
        p.lines.back() = Instruction::end();
    return p;
}

bool Program::fully_specified() const {
    return std::none_of(lines.begin(), lines.end(),
                        [](const Instruction &i) { return i.kind == InstrKind::Empty; });
}

std::size_t Program::programmed_lines() const {
    return static_cast<std::size_t>(std::count_if(
        lines.begin(), lines.end(), [](const Instruction &i) { return i.kind != InstrKind::Empty; }));
}

std::size_t Program::first_empty() const {
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].kind == InstrKind::Empty)
            return i;
    }
    return lines.size();
}

Program Program::completed_with_end() const {
    Program p = *this;
    for (Instruction &i : p.lines) {
        if (i.kind == InstrKind::Empty)
            i = Instruction::end();
    }
    return p;
}

std::size_t ProgramHash::operator()(const Program &p) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const Instruction &i : p.lines) {
        const std::uint64_t word = (static_cast<std::uint64_t>(i.kind) << 32) |
                                   (static_cast<std::uint64_t>(i.index) << 16) | i.target;
        h = (h ^ word) * 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
}

std::vector<Violation> validate_structure(const Program &program, const DomainSpec &domain) {
    std::vector<Violation> out;
    const std::size_t n = program.size();
    if (n == 0) {
        out.push_back({ViolationKind::EmptyProgram, 0, "program has no lines"});
        return out;
    }
    if (program.lines.back().kind != InstrKind::End)
        out.push_back({ViolationKind::LastLineNotEnd, n - 1, "last line must be 'end'"});
    bool seen_empty = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Instruction &ins = program.lines[i];
        switch (ins.kind) {
        case InstrKind::Empty:
            seen_empty = true;
            break;
        case InstrKind::Action:
            if (ins.index >= domain.actions.size())
                out.push_back({ViolationKind::UnknownAction, i, "unknown action index"});
            break;
        case InstrKind::Goto:
            if (ins.target >= n)
                out.push_back({ViolationKind::TargetOutOfRange, i,
                               "goto target " + std::to_string(ins.target) + " outside [0," +
                                   std::to_string(n) + ")"});
            else if (ins.target == i)
                out.push_back({ViolationKind::SelfGoto, i, "goto targets its own line"});
            if (ins.index >= domain.condition_atoms.size())
                out.push_back({ViolationKind::UnknownAtom, i, "unknown condition atom index"});
            break;
        case InstrKind::End:
            break;
        }
        if (seen_empty && ins.kind != InstrKind::Empty && i + 1 < n)
            out.push_back({ViolationKind::NonContiguousPrefix, i,
                           "programmed line follows an empty line"});
    }
    return out;
}

const char *to_string(FailureReason reason) {
    switch (reason) {
    case FailureReason::InapplicableAction:
        return "inapplicable-action";
    case FailureReason::InfiniteLoop:
        return "infinite-loop";
    case FailureReason::BudgetExceeded:
        return "budget-exceeded";
    case FailureReason::GoalMiss:
        return "goal-miss";
    }
    return "?";
}

namespace {

/*
  Set of (pc, state) configurations seen during one execution. Records live
  in a flat arena; the open-addressing table stores record index + 1.
  Only touched slots are cleared between executions.
*/
class ConfigTable {
public:
    void reset(std::size_t width) {
        for (std::size_t slot : used_)
            slots_[slot] = 0;
        used_.clear();
        arena_.clear();
        width_ = width;
        count_ = 0;
        if (slots_.empty())
            slots_.assign(256, 0);
    }

    // False when the configuration was already present.
    bool insert(std::size_t pc, std::span<const Value> state) {
        if ((count_ + 1) * 2 > slots_.size())
            grow();
        const std::uint64_t h = hash(pc, state);
        const std::size_t mask = slots_.size() - 1;
        std::size_t slot = static_cast<std::size_t>(h) & mask;
        while (std::uint32_t entry = slots_[slot]) {
            if (matches(entry - 1, pc, state))
                return false;
            slot = (slot + 1) & mask;
        }
        const std::size_t record = count_++;
        arena_.push_back(static_cast<Value>(pc));
        arena_.insert(arena_.end(), state.begin(), state.end());
        slots_[slot] = static_cast<std::uint32_t>(record + 1);
        used_.push_back(slot);
        return true;
    }

private:
    static std::uint64_t hash(std::size_t pc, std::span<const Value> state) {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ pc;
        for (Value v : state) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 32;
        }
        return h;
    }

    bool matches(std::size_t record, std::size_t pc, std::span<const Value> state) const {
        const Value *base = arena_.data() + record * width_;
        return base[0] == static_cast<Value>(pc) &&
               std::memcmp(base + 1, state.data(), state.size_bytes()) == 0;
    }

    void grow() {
        std::vector<std::uint32_t> bigger(slots_.size() * 2, 0);
        used_.clear();
        const std::size_t mask = bigger.size() - 1;
        for (std::size_t r = 0; r < count_; ++r) {
            const Value *base = arena_.data() + r * width_;
            const std::uint64_t h =
                hash(static_cast<std::size_t>(base[0]), std::span<const Value>(base + 1, width_ - 1));
            std::size_t slot = static_cast<std::size_t>(h) & mask;
            while (bigger[slot])
                slot = (slot + 1) & mask;
            bigger[slot] = static_cast<std::uint32_t>(r + 1);
            used_.push_back(slot);
        }
        slots_ = std::move(bigger);
    }

    std::vector<Value> arena_;
    std::vector<std::uint32_t> slots_;
    std::vector<std::size_t> used_;
    std::size_t width_ = 1;
    std::size_t count_ = 0;
};

struct Scratch {
    ConfigTable seen;
    std::vector<Value> current;
    std::vector<Value> next;
};

Scratch &scratch() {
    thread_local Scratch s;
    return s;
}

enum class Halt : std::uint8_t { Solved, Empty, Failed };

struct RawResult {
    Halt halt;
    FailureReason reason;
    std::size_t line;
    std::size_t steps;
};

// The execution loop shared by run() and run_summary(). Leaves the final
// state in s.current.
RawResult execute(const Program &program, const DomainSpec &domain, const Instance &instance,
                  std::size_t budget, Scratch &s, std::vector<int> *plan) {
    const auto &lines = program.lines;
    const std::size_t n = lines.size();
    s.current = instance.initial.values;
    s.next.resize(s.current.size());
    s.seen.reset(s.current.size() + 1);

    std::size_t pc = 0;
    std::size_t steps = 0;
    while (true) {
        if (pc >= n)
            return {Halt::Failed, FailureReason::InapplicableAction, pc, steps};
        if (steps >= budget)
            return {Halt::Failed, FailureReason::BudgetExceeded, pc, steps};
        if (!s.seen.insert(pc, s.current))
            return {Halt::Failed, FailureReason::InfiniteLoop, pc, steps};
        ++steps;
        const Instruction &ins = lines[pc];
        switch (ins.kind) {
        case InstrKind::Empty:
            return {Halt::Empty, FailureReason::GoalMiss, pc, steps};
        case InstrKind::End:
            if (is_goal(s.current, instance))
                return {Halt::Solved, FailureReason::GoalMiss, pc, steps};
            return {Halt::Failed, FailureReason::GoalMiss, pc, steps};
        case InstrKind::Action:
            if (!apply_action_into(domain, domain.actions[ins.index], s.current, s.next))
                return {Halt::Failed, FailureReason::InapplicableAction, pc, steps};
            s.current.swap(s.next);
            if (plan)
                plan->push_back(ins.index);
            ++pc;
            break;
        case InstrKind::Goto:
            if (eval_condition(domain.condition_atoms[ins.index], s.current))
                ++pc;
            else
                pc = ins.target;
            break;
        }
    }
}

}  // namespace

ExecutionOutcome run(const Program &program, const DomainSpec &domain, const Instance &instance,
                     std::size_t step_budget) {
    Scratch &s = scratch();
    std::vector<int> plan;
    const RawResult r = execute(program, domain, instance, step_budget, s, &plan);
    ExecutionOutcome out;
    out.steps = r.steps;
    switch (r.halt) {
    case Halt::Solved:
        out.result = Solved{std::move(plan), State{s.current}};
        break;
    case Halt::Empty:
        out.result = HaltedAtEmpty{r.line, State{s.current}};
        break;
    case Halt::Failed:
        out.result = Failed{r.reason, r.line};
        break;
    }
    return out;
}

ExecutionSummary run_summary(const Program &program, const DomainSpec &domain,
                             const Instance &instance, std::size_t step_budget) {
    Scratch &s = scratch();
    const RawResult r = execute(program, domain, instance, step_budget, s, nullptr);
    ExecutionSummary out;
    out.line = r.line;
    out.steps = r.steps;
    switch (r.halt) {
    case Halt::Solved:
        out.status = ExecutionSummary::Status::Solved;
        break;
    case Halt::Empty:
        out.status = ExecutionSummary::Status::Halted;
        out.distance = goal_distance(s.current, instance, domain);
        break;
    case Halt::Failed:
        out.status = ExecutionSummary::Status::Failed;
        out.reason = r.reason;
        break;
    }
    return out;
}

std::vector<ExecutionOutcome> run_all(const Program &program, const ProblemSet &problems,
                                      std::size_t step_budget, bool stop_on_failure) {
    std::vector<ExecutionOutcome> outcomes;
    outcomes.reserve(problems.instances.size());
    for (const Instance &inst : problems.instances) {
        outcomes.push_back(run(program, problems.domain, inst, step_budget));
        if (stop_on_failure && outcomes.back().failed())
            break;
    }
    return outcomes;
}

bool is_solution(const Program &program, const ProblemSet &problems, std::size_t step_budget) {
    if (!program.fully_specified())
        throw std::invalid_argument("is_solution requires a fully specified program");
    for (const Instance &inst : problems.instances) {
        if (run_summary(program, problems.domain, inst, step_budget).status !=
            ExecutionSummary::Status::Solved)
            return false;
    }
    return true;
}

std::string format_instruction(const Instruction &instr, const DomainSpec &domain) {
    switch (instr.kind) {
    case InstrKind::Empty:
        return "--";
    case InstrKind::End:
        return "end";
    case InstrKind::Action:
        return "act " + (instr.index < domain.actions.size() ? domain.actions[instr.index].name
                                                             : std::string("?"));
    case InstrKind::Goto:
        return "goto " + std::to_string(instr.target) + " " +
               (instr.index < domain.condition_atoms.size()
                    ? atom_to_string(domain, domain.condition_atoms[instr.index])
                    : std::string("?"));
    }
    return "?";
}

std::string format_program(const Program &program, const DomainSpec &domain) {
    std::string out;
    for (const Instruction &i : program.lines)
        out += format_instruction(i, domain) + "\n";
    return out;
}

std::string format_program_inline(const Program &program, const DomainSpec &domain) {
    std::string out;
    for (std::size_t i = 0; i < program.lines.size(); ++i) {
        if (i)
            out += ';';
        out += format_instruction(program.lines[i], domain);
    }
    return out;
}

Program parse_program(std::string_view text, const DomainSpec &domain) {
    Program program;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto stop = text.find_first_of("\n;", pos);
        std::string_view item =
            text.substr(pos, stop == std::string_view::npos ? std::string_view::npos : stop - pos);
        ++line_no;
        pos = stop == std::string_view::npos ? text.size() + 1 : stop + 1;

        if (const auto hash = item.find('#'); hash != std::string_view::npos)
            item = item.substr(0, hash);
        std::istringstream words{std::string(item)};
        std::string keyword;
        if (!(words >> keyword))
            continue;
        try {
            if (keyword == "--") {
                program.lines.push_back(Instruction::empty());
            } else if (keyword == "end") {
                program.lines.push_back(Instruction::end());
            } else if (keyword == "act") {
                std::string name;
                if (!(words >> name))
                    throw ParseError(line_no, "expected 'act <name>'");
                const auto idx = domain.find_action(name);
                if (!idx)
                    throw ParseError(line_no, "unknown action '" + name + "'");
                program.lines.push_back(Instruction::action(*idx));
            } else if (keyword == "goto") {
                std::string target_text, atom_text;
                if (!(words >> target_text >> atom_text))
                    throw ParseError(line_no, "expected 'goto <line> <atom>'");
                int target = 0;
                const auto [ptr, ec] = std::from_chars(
                    target_text.data(), target_text.data() + target_text.size(), target);
                if (ec != std::errc() || ptr != target_text.data() + target_text.size() || target < 0)
                    throw ParseError(line_no, "invalid goto target '" + target_text + "'");
                const ConditionAtom atom = parse_atom(domain, atom_text);
                const auto it = std::find(domain.condition_atoms.begin(),
                                          domain.condition_atoms.end(), atom);
                if (it == domain.condition_atoms.end())
                    throw ParseError(line_no, "atom '" + atom_text + "' is not declared by the domain");
                program.lines.push_back(Instruction::jump(
                    target, static_cast<int>(it - domain.condition_atoms.begin())));
            } else {
                throw ParseError(line_no, "unknown instruction '" + keyword + "'");
            }
        } catch (const ModelError &e) {
            throw ParseError(line_no, e.what());
        }
        std::string extra;
        if (words >> extra)
            throw ParseError(line_no, "trailing text '" + extra + "'");
    }
    return program;
}

Program load_program(const std::string &path, const DomainSpec &domain) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open program file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_program(buffer.str(), domain);
}

}  // namespace bfgp
