#include <doctest.h>

#include "bfgp/problem_io.hpp"
#include "micro.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace bfgp;

namespace {

const char *kSolution = "act accumulate\nact decrement\ngoto 0 c=0\nend\n";

bool has(const std::vector<Violation> &vs, ViolationKind k) {
    return std::any_of(vs.begin(), vs.end(), [k](const Violation &v) { return v.kind == k; });
}

Instance single(const ProblemSet &ps, Value c, Value acc_goal) {
    Instance inst;
    inst.initial = State{std::vector<Value>(ps.domain.variables.size(), 0)};
    inst.initial.values[*ps.domain.find_variable("c")] = c;
    inst.goal = {{*ps.domain.find_variable("acc"), acc_goal}, {*ps.domain.find_variable("c"), 0}};
    return inst;
}

}  // namespace

TEST_CASE("structural validation") {
    const auto ps = micro::load(micro::kTriangular);
    const auto &d = ps.domain;
    CHECK(validate_structure(Program({Instruction::end()}), d).empty());
    CHECK(has(validate_structure(Program({Instruction::jump(0, 1), Instruction::end()}), d),
              ViolationKind::SelfGoto));
    CHECK(has(validate_structure(
                  Program({Instruction::action(0), Instruction::jump(5, 1), Instruction::end()}), d),
              ViolationKind::TargetOutOfRange));
    CHECK(has(validate_structure(Program({Instruction::action(0)}), d), ViolationKind::LastLineNotEnd));
    CHECK(has(validate_structure(Program(), d), ViolationKind::EmptyProgram));
    CHECK(has(validate_structure(Program({Instruction::action(7), Instruction::end()}), d),
              ViolationKind::UnknownAction));
    CHECK(has(validate_structure(Program({Instruction::jump(1, 9), Instruction::end()}), d),
              ViolationKind::UnknownAtom));
    CHECK(has(validate_structure(Program({Instruction::empty(), Instruction::action(0),
                                          Instruction::end()}),
                                 d),
              ViolationKind::NonContiguousPrefix));
    CHECK(validate_structure(parse_program(kSolution, d), d).empty());
}

TEST_CASE("run") {
    const auto ps = micro::load(micro::kTriangular);
    const auto &d = ps.domain;
    const Program sol = parse_program(kSolution, d);

    SUBCASE("end on a goal state solves with an empty plan") {
        Instance inst;
        inst.initial = State{{0, 0}};
        auto out = run(Program({Instruction::end()}), d, inst);
        REQUIRE(out.solved());
        CHECK(std::get<Solved>(out.result).plan.empty());
    }
    SUBCASE("triangular sum, k = 3") {
        auto out = run(sol, d, single(ps, 3, 6));
        REQUIRE(out.solved());
        const auto &plan = std::get<Solved>(out.result).plan;
        const int a = *d.find_action("accumulate"), m = *d.find_action("decrement");
        CHECK(plan == std::vector<int>{a, m, a, m, a, m});
    }
    SUBCASE("plan replay reaches the goal") {
        for (const auto &inst : ps.instances) {
            auto out = run(sol, d, inst);
            REQUIRE(out.solved());
            State s = inst.initial;
            for (int a : std::get<Solved>(out.result).plan) {
                auto next = apply_action(d, d.actions[a], s);
                REQUIRE(next);
                s = *next;
            }
            CHECK(is_goal(s, inst));
            CHECK(s == std::get<Solved>(out.result).final_state);
        }
    }
    SUBCASE("jump cycle without state change is an infinite loop") {
        Program p = parse_program("goto 1 c>0; goto 0 c>0; end", d);
        Instance inst;
        inst.initial = State{{0, 0}};
        auto out = run(p, d, inst);
        REQUIRE(out.failed());
        CHECK(std::get<Failed>(out.result).reason == FailureReason::InfiniteLoop);
        CHECK(out.steps == 2);
    }
    SUBCASE("budget") {
        auto out = run(sol, d, single(ps, 6, 21), 5);
        REQUIRE(out.failed());
        CHECK(std::get<Failed>(out.result).reason == FailureReason::BudgetExceeded);
    }
    SUBCASE("inapplicable action and goal miss") {
        Program dec_first = parse_program("act decrement; end", d);
        Instance zero;
        zero.initial = State{{0, 0}};
        zero.goal = {{0, 0}};
        auto out = run(dec_first, d, zero);
        REQUIRE(out.failed());
        CHECK(std::get<Failed>(out.result).reason == FailureReason::InapplicableAction);

        auto miss = run(Program({Instruction::end()}), d, single(ps, 2, 3));
        REQUIRE(miss.failed());
        CHECK(std::get<Failed>(miss.result).reason == FailureReason::GoalMiss);
    }
    SUBCASE("empty line halts") {
        Program partial({Instruction::action(0), Instruction::empty(), Instruction::end()});
        auto out = run(partial, d, single(ps, 2, 3));
        REQUIRE(out.halted());
        const auto &h = std::get<HaltedAtEmpty>(out.result);
        CHECK(h.line == 1);
        CHECK(h.state.values[*d.find_variable("acc")] == 2);
    }
}

TEST_CASE("run_all and is_solution") {
    const auto ps = micro::load(micro::kTriangular);
    const auto &d = ps.domain;
    const Program sol = parse_program(kSolution, d);
    auto all = run_all(sol, ps);
    CHECK(all.size() == 5);
    CHECK(std::all_of(all.begin(), all.end(), [](const auto &o) { return o.solved(); }));
    CHECK(is_solution(sol, ps));
    CHECK(oracle::reference_solution(sol, ps));

    CHECK_FALSE(is_solution(Program({Instruction::end()}), ps));
    CHECK_FALSE(is_solution(parse_program("goto 1 c>0; goto 0 c>0; end", d), ps));
    CHECK_THROWS_AS(is_solution(Program::blank(3), ps), std::invalid_argument);

    SUBCASE("short circuit") {
        auto mixed = ps;
        mixed.instances[2].goal[0].value = 11;  // k=4 now fails
        auto outcomes = run_all(sol, mixed, kDefaultStepBudget, true);
        CHECK(outcomes.size() == 3);
        CHECK(outcomes[2].failed());
        CHECK(run_all(sol, mixed, kDefaultStepBudget, false).size() == 5);
    }
    SUBCASE("halting per instance") {
        Program partial({Instruction::action(0), Instruction::empty(), Instruction::end()});
        for (const auto &o : run_all(partial, ps))
            CHECK(o.halted());
    }
}

TEST_CASE("program text") {
    const auto ps = micro::load(micro::kTriangular);
    const auto &d = ps.domain;
    const Program sol = parse_program(kSolution, d);
    CHECK(format_program(sol, d) == kSolution);
    CHECK(parse_program(format_program_inline(sol, d), d) == sol);
    CHECK(format_program_inline(sol, d) == "act accumulate;act decrement;goto 0 c=0;end");
    Program partial = Program::blank(3);
    CHECK(parse_program(format_program(partial, d), d) == partial);
    CHECK_THROWS(parse_program("act fly; end", d));
    CHECK_THROWS(parse_program("goto 0 acc=0; end", d));  // atom not declared
    CHECK_THROWS(parse_program("jump 0; end", d));
}

TEST_CASE("program helpers") {
    Program p = Program::blank(4);
    CHECK(p.size() == 4);
    CHECK(p.lines.back() == Instruction::end());
    CHECK(p.first_empty() == 0);
    CHECK(p.programmed_lines() == 1);
    CHECK_FALSE(p.fully_specified());
    p.lines[0] = Instruction::action(1);
    CHECK(p.first_empty() == 1);
    CHECK(p.programmed_lines() == 2);
    Program done = p.completed_with_end();
    CHECK(done.fully_specified());
    CHECK(done.lines[1] == Instruction::end());
    CHECK(ProgramHash{}(p) != ProgramHash{}(done));
}

TEST_CASE("engine agrees with the reference interpreter") {
    const auto ps = micro::load(micro::kTransfer);
    std::size_t checked = 0;
    oracle::for_each_program(ps, 4, [&](const Program &p) {
        for (const auto &inst : ps.instances) {
            const bool ref = oracle::reference_run(p, ps.domain, inst) == oracle::RefStatus::Solved;
            CHECK(run(p, ps.domain, inst).solved() == ref);
        }
        ++checked;
        return true;
    });
    CHECK(checked == 729);  // (2 + 3*2 + 1)^3
}
