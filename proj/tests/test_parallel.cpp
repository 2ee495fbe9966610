#include <doctest.h>

#include "bfgp/parallel.hpp"
#include "bfgp/suites.hpp"
#include "micro.hpp"

#include <map>
#include <thread>

using namespace bfgp;

namespace {

std::vector<SearchNode> ranked(std::size_t count) {
    std::vector<SearchNode> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(SearchNode{Program::blank(2), EvaluationCost{0, 0, i}});
    return out;
}

ParallelConfig config_for(std::size_t lines, std::size_t t, ParallelStrategy s,
                          std::size_t seeds = 1) {
    ParallelConfig c;
    c.base.n_lines = lines;
    c.threads = t;
    c.seed_per_thread = seeds;
    c.strategy = s;
    return c;
}

}  // namespace

TEST_CASE("partition") {
    auto parts = partition(ranked(8), 4);
    REQUIRE(parts.size() == 4);
    for (std::size_t t = 0; t < 4; ++t) {
        REQUIRE(parts[t].size() == 2);
        CHECK(parts[t][0].cost.tiebreak_seq == t);
        CHECK(parts[t][1].cost.tiebreak_seq == t + 4);
    }
    auto one = partition(ranked(5), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size() == 5);
    auto uneven = partition(ranked(5), 4);
    CHECK(uneven[0].size() == 2);
    CHECK(uneven[1].size() == 1);
    CHECK(uneven[2].size() == 1);
    CHECK(uneven[3].size() == 1);
    CHECK_THROWS_AS(partition(ranked(2), 0), std::invalid_argument);
}

TEST_CASE("share decision") {
    CHECK(share_decision({5, 0, 0}, {7, 0, 0}));
    CHECK(share_decision({7, 9, 9}, {7, 0, 0}));
    CHECK_FALSE(share_decision({9, 0, 0}, {7, 0, 0}));
}

TEST_CASE("next recipient") {
    std::size_t cursor = 0;
    std::vector<std::size_t> seen;
    for (int i = 0; i < 6; ++i) {
        auto [r, c] = next_recipient(2, cursor, 4);
        seen.push_back(r);
        cursor = c;
    }
    CHECK(seen == std::vector<std::size_t>{3, 0, 1, 3, 0, 1});

    cursor = 0;
    for (int i = 0; i < 5; ++i) {
        auto [r, c] = next_recipient(0, cursor, 2);
        CHECK(r == 1);
        cursor = c;
    }

    for (std::size_t t : {2u, 3u, 5u, 8u}) {
        for (std::size_t self = 0; self < t; ++self) {
            std::map<std::size_t, int> counts;
            cursor = 0;
            for (std::size_t i = 0; i < 3 * (t - 1); ++i) {
                auto [r, c] = next_recipient(self, cursor, t);
                ++counts[r];
                cursor = c;
            }
            CHECK(counts.size() == t - 1);
            CHECK(counts.count(self) == 0);
            for (auto [r, n] : counts)
                CHECK(n == 3);
        }
    }
    CHECK_THROWS_AS(next_recipient(0, 0, 1), std::invalid_argument);
}

TEST_CASE("mpsc queue") {
    MpscQueue<int> q;
    CHECK_FALSE(q.try_pop());
    constexpr int kProducers = 4, kEach = 5000;
    {
        std::vector<std::jthread> producers;
        for (int p = 0; p < kProducers; ++p)
            producers.emplace_back([&q, p] {
                for (int i = 0; i < kEach; ++i)
                    q.push(p * kEach + i);
            });
    }
    std::vector<int> last(kProducers, -1);
    int total = 0;
    while (auto v = q.try_pop()) {
        const int p = *v / kEach;
        CHECK(*v > last[p]);  // per-producer FIFO
        last[p] = *v;
        ++total;
    }
    CHECK(total == kProducers * kEach);
}

TEST_CASE("shared control") {
    SharedControl control(2);
    CHECK_FALSE(control.stopped());
    CHECK(control.finish(SearchStatus::Solved, Program({Instruction::end()})));
    CHECK_FALSE(control.finish(SearchStatus::Exhausted));
    CHECK(control.stopped());
    CHECK(control.status() == SearchStatus::Solved);
    CHECK(control.result().has_value());

    SharedControl idle(2);
    idle.idle_count = 2;
    CHECK(idle.quiescent());
    idle.sent_count = 1;
    CHECK_FALSE(idle.quiescent());
}

TEST_CASE("seed phase") {
    SUBCASE("t = 1, N = 1 stops after one expansion") {
        const auto ps = micro::load(micro::kTriangular);
        auto seed = seed_phase(ps, config_for(4, 1, ParallelStrategy::Independent));
        CHECK(seed.kind == SeedResult::Kind::Open);
        CHECK(seed.expanded == 1);
        CHECK(seed.open.size() >= 1);
        for (std::size_t i = 1; i < seed.open.size(); ++i)
            CHECK(seed.open[i - 1].cost < seed.open[i].cost);
    }
    SUBCASE("solution during seeding") {
        const auto ps = micro::load(micro::kTriangular);
        auto seed = seed_phase(ps, config_for(4, 4, ParallelStrategy::Independent, 1000));
        CHECK(seed.kind == SeedResult::Kind::Solved);
        REQUIRE(seed.solution);
        CHECK(is_solution(*seed.solution, ps));

        auto report = strategy1_search(ps, config_for(4, 4, ParallelStrategy::Independent, 1000));
        CHECK(report.status == SearchStatus::Solved);
    }
    SUBCASE("t = 4, N = 32") {
        const auto ps = generate_suite(default_suite("sorting"));
        auto seed = seed_phase(ps, config_for(6, 4, ParallelStrategy::Independent, 32));
        REQUIRE(seed.kind == SeedResult::Kind::Open);
        CHECK(seed.open.size() >= 128);
    }
}

TEST_CASE("strategy 1") {
    const auto ps = micro::load(micro::kTriangular);
    SearchConfig base;
    base.n_lines = 4;
    const auto seq = bfgp_search(ps, base);
    auto one = strategy1_search(ps, config_for(4, 1, ParallelStrategy::Independent));
    CHECK(one.status == SearchStatus::Solved);
    CHECK(one.program == seq.program);
    CHECK(one.expanded == seq.expanded);

    for (std::size_t t : {2u, 4u}) {
        auto r = strategy1_search(ps, config_for(4, t, ParallelStrategy::Independent));
        REQUIRE(r.status == SearchStatus::Solved);
        CHECK(is_solution(*r.program, ps));
        CHECK(r.shared == 0);
    }

    SUBCASE("exhaustion covers the space exactly once") {
        const auto blind = micro::load(micro::kBlind);
        SearchConfig b;
        b.n_lines = 5;
        const auto s = bfgp_search(blind, b);
        REQUIRE(s.status == SearchStatus::Exhausted);
        for (std::size_t t : {2u, 4u}) {
            auto r = strategy1_search(blind, config_for(5, t, ParallelStrategy::Independent, 4));
            CHECK(r.status == SearchStatus::Exhausted);
            CHECK(r.expanded == s.expanded);
            CHECK(r.generated == s.generated);
        }
    }
    CHECK_THROWS_AS(strategy1_search(ps, config_for(4, 2, ParallelStrategy::Sharing)),
                    std::invalid_argument);
    CHECK_THROWS_AS(strategy1_search(ps, config_for(4, 0, ParallelStrategy::Independent)),
                    std::invalid_argument);
}

TEST_CASE("strategy 2") {
    const auto ps = micro::load(micro::kTriangular);
    SearchConfig base;
    base.n_lines = 4;
    const auto seq = bfgp_search(ps, base);
    auto one = strategy2_search(ps, config_for(4, 1, ParallelStrategy::Sharing));
    CHECK(one.program == seq.program);
    CHECK(one.expanded == seq.expanded);
    CHECK(one.shared == 0);

    for (std::size_t t : {2u, 3u, 4u}) {
        auto r = strategy2_search(ps, config_for(4, t, ParallelStrategy::Sharing));
        REQUIRE(r.status == SearchStatus::Solved);
        CHECK(is_solution(*r.program, ps));
    }

    SUBCASE("node conservation on an unsolvable suite") {
        const auto blind = micro::load(micro::kBlind);
        for (std::size_t t : {2u, 4u}) {
            auto cfg = config_for(5, t, ParallelStrategy::Sharing);
            auto r = strategy2_search(blind, cfg);
            CHECK(r.status == SearchStatus::Exhausted);
            CHECK(r.shared == r.received);
            CHECK(r.residual == 0);
            CHECK(r.generated - r.pruned == r.expanded + r.residual);
        }
    }
}
