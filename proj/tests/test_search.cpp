#include <doctest.h>

#include "bfgp/problem_io.hpp"
#include "bfgp/search.hpp"
#include "micro.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

using namespace bfgp;

TEST_CASE("evaluate") {
    const auto ps = micro::load(micro::kTriangular);
    const auto &d = ps.domain;
    const Program sol = parse_program("act accumulate; act decrement; goto 0 c=0; end", d);
    CHECK(evaluate(sol, ps).primary == 0);
    CHECK(evaluate(sol, ps).tiebreak_lines == 4);

    // Blank program halts at line 0 in every initial state: sum of |acc - goal| + c.
    std::uint64_t expected = 0;
    for (int k = 2; k <= 6; ++k)
        expected += k * (k + 1) / 2 + k;
    CHECK(evaluate(Program::blank(4), ps).primary == expected);

    CHECK(evaluate(parse_program("goto 1 c>0; goto 0 c>0; end", d), ps).infinite());
    CHECK(evaluate(Program({Instruction::end()}), ps).infinite());

    SUBCASE("summed halt distances") {
        auto three = ps;
        three.instances.resize(3);
        Program p({Instruction::action(0), Instruction::empty(), Instruction::empty(),
                   Instruction::end()});
        // After one accumulate: acc=k, c=k; distance = (k(k+1)/2 - k) + k.
        CHECK(evaluate(p, three).primary == 3 + 6 + 10);
    }
}

TEST_CASE("cost ordering") {
    using E = EvaluationCost;
    CHECK(compare(E{5, 0, 0}, E{7, 0, 0}) == std::strong_ordering::less);
    CHECK(compare(E{5, 2, 0}, E{5, 3, 0}) == std::strong_ordering::less);
    CHECK(compare(E{5, 2, 10}, E{5, 2, 4}) == std::strong_ordering::greater);
    CHECK(compare(E{5, 2, 4}, E{5, 2, 4}) == std::strong_ordering::equal);
    CHECK(E{kInfiniteCost, 0, 0} > E{1000, 9, 9});

    SUBCASE("strict weak ordering on random keys") {
        std::mt19937 rng(7);
        std::vector<E> keys;
        for (int i = 0; i < 60; ++i)
            keys.push_back(E{rng() % 4, static_cast<std::uint32_t>(rng() % 3), rng() % 5});
        for (const E &a : keys) {
            CHECK_FALSE(a < a);
            for (const E &b : keys) {
                if (a < b)
                    CHECK_FALSE(b < a);
                for (const E &c : keys)
                    if (a < b && b < c)
                        CHECK(a < c);
            }
        }
    }
}

TEST_CASE("candidate instructions") {
    auto ps = micro::load(micro::kTriangular);
    auto c = candidate_instructions(ps, 1, 4);
    CHECK(c.size() == 9);
    CHECK(c.front() == Instruction::action(0));
    CHECK(c.back() == Instruction::end());
    CHECK(std::none_of(c.begin(), c.end(), [](const Instruction &i) {
        return i.kind == InstrKind::Goto && i.target == 1;
    }));
    CHECK(candidate_instructions(ps, 1, 4) == c);

    ps.domain.condition_atoms.clear();
    auto bare = candidate_instructions(ps, 0, 4);
    CHECK(bare.size() == 3);
}

TEST_CASE("successors") {
    const auto ps = micro::load(micro::kTriangular);
    SearchConfig config;
    config.n_lines = 4;
    SearchNode root{Program::blank(4), evaluate(Program::blank(4), ps)};
    std::uint64_t seq = 0;
    ExpansionCounts counts;
    auto kids = successors(root, ps, config, seq, &counts);
    CHECK(counts.generated == 9);
    CHECK(counts.generated - counts.pruned == kids.size());
    CHECK(seq == kids.size());
    // End at line 0 misses every goal.
    CHECK(std::none_of(kids.begin(), kids.end(),
                       [](const SearchNode &n) { return n.program.lines[0] == Instruction::end(); }));
    for (const auto &k : kids) {
        CHECK(k.cost == EvaluationCost{evaluate(k.program, ps).primary, 2, k.cost.tiebreak_seq});
        CHECK(k.program.first_empty() == 1);
    }

    SUBCASE("children differ exactly at the filled line") {
        SearchNode node{Program({Instruction::action(0), Instruction::action(1), Instruction::empty(),
                                 Instruction::end()}),
                        {}};
        node.cost = evaluate(node.program, ps);
        auto grandkids = successors(node, ps, config, seq);
        std::set<std::vector<std::uint32_t>> seen;
        for (const auto &g : grandkids) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (i != 2)
                    CHECK(g.program.lines[i] == node.program.lines[i]);
            }
            CHECK(g.program.lines[2] != Instruction::empty());
            seen.insert({std::uint32_t(g.program.lines[2].kind), g.program.lines[2].index,
                         g.program.lines[2].target});
        }
        CHECK(seen.size() == grandkids.size());
    }
}

TEST_CASE("sequential search") {
    SUBCASE("trivial suite") {
        auto ps = parse_problem_set_text("domain t\nvar c int 2\n"
                                         "action dec guard c>0 effects c:=c-1\natom c>0\n"
                                         "instance\ninit c=0\ngoal c=0\n");
        SearchConfig config;
        config.n_lines = 1;
        auto r = bfgp_search(ps, config);
        REQUIRE(r.status == SearchStatus::Solved);
        CHECK(*r.program == Program({Instruction::end()}));
        CHECK(r.expanded == 1);
    }
    SUBCASE("triangular sum") {
        const auto ps = micro::load(micro::kTriangular);
        REQUIRE(oracle::brute_force(ps, 4));
        SearchConfig config;
        config.n_lines = 4;
        auto r = bfgp_search(ps, config);
        REQUIRE(r.status == SearchStatus::Solved);
        CHECK(is_solution(*r.program, ps));
        CHECK(oracle::reference_solution(*r.program, ps));
        CHECK(format_program_inline(*r.program, ps.domain) ==
              "act accumulate;act decrement;goto 0 c=0;end");
    }
    SUBCASE("unsolvable suite exhausts") {
        const auto ps = micro::load(micro::kBlind);
        CHECK_FALSE(oracle::brute_force(ps, 3));
        SearchConfig config;
        config.n_lines = 3;
        config.record_expanded = true;
        auto r = bfgp_search(ps, config);
        CHECK(r.status == SearchStatus::Exhausted);
        CHECK(r.residual == 0);
        CHECK(r.generated - r.pruned == r.expanded);
        std::unordered_set<Program, ProgramHash> unique(r.expanded_programs.begin(),
                                                        r.expanded_programs.end());
        CHECK(unique.size() == r.expanded_programs.size());
    }
    SUBCASE("budgets") {
        const auto ps = micro::load(micro::kBlind);
        SearchConfig config;
        config.n_lines = 5;
        config.node_budget = 3;
        auto r = bfgp_search(ps, config);
        CHECK(r.status == SearchStatus::BudgetExceeded);
        CHECK(r.expanded == 3);
    }
    SUBCASE("config errors") {
        const auto ps = micro::load(micro::kBlind);
        SearchConfig config;
        config.n_lines = 0;
        CHECK_THROWS_AS(bfgp_search(ps, config), std::invalid_argument);
    }
}
