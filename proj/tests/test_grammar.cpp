#include <doctest.h>

#include "dpio/grammar.hpp"

using namespace dpio;

TEST_CASE("parse a toy grammar") {
    auto g = parse_grammar("S -> A B\nA -> 'a'\nB -> 'b'\n");
    CHECK(g.variable_count() == 3);
    CHECK(g.binary_rules().size() == 1);
    CHECK(g.terminal_rules().size() == 2);
    CHECK(g.gamma() == 1);
    CHECK(g.variable_name(g.start()) == "S");
    CHECK(!g.start_epsilon());
}

TEST_CASE("duplicate right-hand sides collapse into one group") {
    auto g = parse_grammar("S -> A B\nC -> A B\nA -> 'a'\nB -> 'b'\n");
    CHECK(g.gamma() == 1);
    REQUIRE(g.groups().size() == 1);
    CHECK(g.groups()[0].lhs.size() == 2);
    CHECK(g.groups()[0].placeholder == g.variable_count());
}

TEST_CASE("group structure") {
    auto g = parse_grammar("S -> A B\nC -> A B\nD -> B C\nA -> 'a'\nB -> 'b'\n");
    auto groups = gamma_groups(g);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].lhs == std::vector<int>{0, 3});  // S and C share RHS "A B"
    CHECK(groups[1].lhs.size() == 1);

    // placeholders unique and disjoint from variable indices
    for (std::size_t i = 0; i < groups.size(); ++i) {
        CHECK(groups[i].placeholder >= g.variable_count());
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            CHECK(groups[i].placeholder != groups[j].placeholder);
    }

    // the union of group lhs sets reconstructs the rule set
    std::size_t rebuilt = 0;
    for (const auto& grp : groups) rebuilt += grp.lhs.size();
    CHECK(rebuilt == g.binary_rules().size());
}

TEST_CASE("ten rules sharing one right-hand side give gamma 1") {
    std::string text;
    for (int i = 0; i < 10; ++i) text += "X" + std::to_string(i) + " -> A B\n";
    text = "S -> A B\n" + text + "A -> 'a'\nB -> 'b'\n";
    auto g = parse_grammar(text);
    CHECK(g.gamma() == 1);
    CHECK(g.binary_rules().size() == 11);
}

TEST_CASE("format violations") {
    CHECK_THROWS_AS(parse_grammar("S -> a B\n"), NotCNF);          // lowercase unquoted
    CHECK_THROWS_AS(parse_grammar("S -> 'ab'\n"), NotCNF);         // multi-character terminal
    CHECK_THROWS_AS(parse_grammar("S -> A B C\n"), SyntaxError);   // ternary
    CHECK_THROWS_AS(parse_grammar("S A B\n"), SyntaxError);        // missing arrow
    CHECK_THROWS_AS(parse_grammar(""), SyntaxError);               // empty
    CHECK_THROWS_AS(parse_grammar("S -> A B\nA ->\n"), NotCNF);    // epsilon on non-start
}

TEST_CASE("start epsilon rule") {
    auto g = parse_grammar("S ->\nS -> A B\nA -> 'a'\nB -> 'b'\n");
    CHECK(g.start_epsilon());
}

TEST_CASE("comments and blank lines are skipped") {
    auto g = parse_grammar("# header\nS -> A B  # trailing\n\nA -> 'a'\nB -> 'b'\n");
    CHECK(g.binary_rules().size() == 1);
    CHECK(g.terminal_rules().size() == 2);
}

TEST_CASE("non-ascii terminals") {
    auto g = parse_grammar("S -> A B\nA -> 'å'\nB -> 'b'\n");
    CHECK(g.terminal_rules()[0].terminal == U'å');
}
