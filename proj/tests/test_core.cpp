#include <doctest.h>

#include "bfgp/problem_io.hpp"
#include "bfgp/suites.hpp"
#include "micro.hpp"

using namespace bfgp;

namespace {

ProblemSet triangular() { return micro::load(micro::kTriangular); }

State make(const DomainSpec &d, std::initializer_list<std::pair<const char *, Value>> vals) {
    State s{std::vector<Value>(d.variables.size(), 0)};
    for (auto [name, v] : vals)
        s.values[*d.find_variable(name)] = v;
    return s;
}

}  // namespace

TEST_CASE("condition atoms") {
    const auto ps = triangular();
    const auto &d = ps.domain;
    CHECK(eval_condition(parse_atom(d, "c>0"), make(d, {{"c", 3}})));
    CHECK(eval_condition(parse_atom(d, "c=0"), make(d, {{"c", 0}})));
    CHECK_FALSE(eval_condition(parse_atom(d, "c=0"), make(d, {{"c", 1}})));

    auto two = parse_problem_set_text("domain t\nvar i int 4\nvar j int 4\n"
                                      "action a guard - effects i:=i+1\natom i<j\n"
                                      "instance\ninit i=2 j=2\ngoal\n");
    const auto less = parse_atom(two.domain, "i<j");
    CHECK_FALSE(eval_condition(less, two.instances[0].initial));
    CHECK(eval_condition(parse_atom(two.domain, "i=j"), two.instances[0].initial));
}

TEST_CASE("apply_action") {
    const auto ps = triangular();
    const auto &d = ps.domain;
    const auto &acc = d.actions[*d.find_action("accumulate")];
    const auto &dec = d.actions[*d.find_action("decrement")];

    CHECK(apply_action(d, dec, make(d, {{"c", 1}})) == make(d, {{"c", 0}}));
    CHECK_FALSE(apply_action(d, dec, make(d, {{"c", 0}})).has_value());
    CHECK(apply_action(d, acc, make(d, {{"acc", 3}, {"c", 2}})) == make(d, {{"acc", 5}, {"c", 2}}));

    SUBCASE("out of range effect is inapplicable") {
        CHECK_FALSE(apply_action(d, acc, make(d, {{"acc", 20}, {"c", 2}})).has_value());
    }
    SUBCASE("effects read the pre-state") {
        auto sw = parse_problem_set_text("domain s\nvar a int 9\nvar b int 9\n"
                                         "action swap guard - effects a:=b,b:=a\natom a=0\n"
                                         "instance\ninit a=1 b=7\ngoal a=7 b=1\n");
        auto out = apply_action(sw.domain, sw.domain.actions[0], sw.instances[0].initial);
        REQUIRE(out);
        CHECK(is_goal(*out, sw.instances[0]));
    }
    SUBCASE("deterministic") {
        const State s = make(d, {{"acc", 1}, {"c", 4}});
        CHECK(apply_action(d, acc, s) == apply_action(d, acc, s));
    }
}

TEST_CASE("goal test and distance") {
    const auto ps = triangular();
    const auto &d = ps.domain;
    Instance inst;
    inst.goal = {{*d.find_variable("acc"), 6}, {*d.find_variable("c"), 0}};
    CHECK(is_goal(make(d, {{"acc", 6}}), inst));
    CHECK_FALSE(is_goal(make(d, {{"acc", 6}, {"c", 1}}), inst));
    CHECK(goal_distance(make(d, {{"acc", 4}}), inst, d) == 2);
    CHECK(goal_distance(make(d, {{"acc", 6}}), inst, d) == 0);

    Instance only_acc;
    only_acc.goal = {{*d.find_variable("acc"), 6}};
    CHECK(goal_distance(make(d, {}), only_acc, d) == 6);

    Instance empty;
    CHECK(is_goal(make(d, {{"c", 5}}), empty));
    CHECK(goal_distance(make(d, {{"c", 5}}), empty, d) == 0);
}

TEST_CASE("boolean distance counts wrong bits") {
    auto ps = parse_problem_set_text("domain b\nvar p bool\nvar q bool\n"
                                     "action flip guard - effects p:=q,q:=p\natom p\n"
                                     "instance\ninit p=1\ngoal p=0 q=1\n");
    CHECK(goal_distance(ps.instances[0].initial, ps.instances[0], ps.domain) == 2);
}

TEST_CASE("parser") {
    SUBCASE("minimal file") {
        auto ps = parse_problem_set_text("domain m\nvar c int 3\n"
                                         "action dec guard c>0 effects c:=c-1\natom c>0\n"
                                         "instance\ninit c=1\ngoal c=0\n");
        CHECK(ps.instances.size() == 1);
        CHECK(ps.domain.actions.size() == 1);
        CHECK(ps.domain.condition_atoms.size() == 1);
    }
    SUBCASE("undeclared variable names the line and variable") {
        const char *text = "domain m\nvar c int 3\naction dec guard c>0 effects x:=c-1\n"
                           "atom c>0\ninstance\ninit c=1\ngoal c=0\n";
        try {
            parse_problem_set_text(text);
            FAIL("expected a parse error");
        } catch (const ParseError &e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("'x'") != std::string::npos);
        }
    }
    SUBCASE("malformed inputs") {
        CHECK_THROWS_AS(parse_problem_set_text(""), ParseError);
        CHECK_THROWS_AS(parse_problem_set_text("domain m\nvar c int 3\n"), ParseError);
        CHECK_THROWS_AS(parse_problem_set_text("domain m\nvar c int 3\nvar c int 2\n"), ParseError);
        CHECK_THROWS_AS(parse_problem_set_text("domain m\nvar c int 3\natom c>0\n"
                                               "action a guard - effects c:=1\ninstance\n"),
                        ParseError);
        CHECK_THROWS_AS(parse_problem_set_text("domain m\nvar c int 3\n"
                                               "action a guard - effects c:=1\natom c>0\n"
                                               "instance\ninit c=9\n"),
                        ParseError);
        CHECK_THROWS_AS(parse_problem_set_text("domain m\nvar c int 3\n"
                                               "action a guard - effects c:=1\natom c>0\n"
                                               "instance\ninit c=1 c=2\n"),
                        ParseError);
    }
    SUBCASE("comments and blank lines") {
        auto ps = parse_problem_set_text("# header\ndomain m\n\nvar c int 3  # counter\n"
                                         "action dec guard c>0 effects c:=c-1\natom c>0\n"
                                         "instance\ninit c=1\ngoal c=0\n");
        CHECK(ps.domain.variables.size() == 1);
    }
}

TEST_CASE("serialization round trip") {
    const auto ps = triangular();
    CHECK(ps.instances.size() == 5);
    CHECK(parse_problem_set_text(serialize_problem_set(ps)) == ps);
    for (const SuiteInfo &info : suite_registry()) {
        CAPTURE(info.name);
        const ProblemSet generated = generate_suite(default_suite(info.name));
        const std::string text = serialize_problem_set(generated);
        CHECK(parse_problem_set_text(text) == generated);
        CHECK(serialize_problem_set(parse_problem_set_text(text)) == text);
    }
}

TEST_CASE("model validation") {
    auto ps = triangular();
    CHECK_NOTHROW(validate_problem_set(ps));
    ps.domain.condition_atoms.clear();
    CHECK_THROWS_AS(validate_problem_set(ps), ModelError);

    auto bad = triangular();
    bad.domain.actions[0].effects.push_back(bad.domain.actions[0].effects[0]);
    CHECK_THROWS_AS(validate_domain(bad.domain), ModelError);

    auto none = triangular();
    none.instances.clear();
    CHECK_THROWS_AS(validate_problem_set(none), ModelError);
}
