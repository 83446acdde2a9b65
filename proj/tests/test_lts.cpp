#include "mediator/lts.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mediator;

namespace {

const char* minimal_source = "lts T\ninitial s0\nfinal s1\ns0 -> s1 : !ping\n";

} // namespace

TEST_CASE("parse accepts the minimal machine") {
    Lts lts = parse_lts(minimal_source);
    CHECK(lts.name == "T");
    CHECK(lts.states.size() == 2);
    CHECK(lts.initial == "s0");
    CHECK(lts.finals == std::set<std::string>{"s1"});
    REQUIRE(lts.transitions.size() == 1);
    CHECK(lts.transitions[0].action.direction == Direction::Send);
    CHECK(lts.transitions[0].action.label.name == "ping");
    CHECK(validate(lts).empty());
}

TEST_CASE("parse accepts the accept-immediately machine") {
    Lts lts = parse_lts("lts T\ninitial s0\nfinal s0\n");
    CHECK(lts.states.size() == 1);
    CHECK(lts.transitions.empty());
    CHECK(validate(lts).empty());
}

TEST_CASE("parse handles comments, blank lines and loose whitespace") {
    Lts lts = parse_lts("# intro\nlts  T\n\n  initial s0 # root\nfinal s1 , s2\n"
                        "s0->s1:!a\n s0 -> s2 : ?b # edge\n");
    CHECK(lts.finals == std::set<std::string>{"s1", "s2"});
    CHECK(lts.transitions.size() == 2);
}

TEST_CASE("parse reports positions on syntax errors") {
    try {
        parse_lts("lts T\ninitial s0\nfinal s1\ns0 -> s1 ; !a\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.column > 1);
    }
}

TEST_CASE("parse rejects structural mistakes") {
    // no initial line
    CHECK_THROWS_AS(parse_lts("lts T\nfinal s0\n"), ParseError);
    // empty final set
    CHECK_THROWS_AS(parse_lts("lts T\ninitial s0\nfinal\n"), ParseError);
    // final state never introduced anywhere else
    CHECK_THROWS_AS(parse_lts("lts T\ninitial s0\nfinal s9\ns0 -> s0 : !a\n"), ParseError);
    // duplicate transition
    CHECK_THROWS_AS(
        parse_lts("lts T\ninitial s0\nfinal s1\ns0 -> s1 : !a\ns0 -> s1 : !a\n"),
        ParseError);
}

TEST_CASE("parse keeps nondeterministic branches that are not exact duplicates") {
    Lts lts = parse_lts("lts T\ninitial s0\nfinal s1, s2\n"
                        "s0 -> s1 : !a\ns0 -> s2 : !a\n");
    CHECK(lts.transitions.size() == 2);
    CHECK(validate(lts).empty());
}

TEST_CASE("validate flags unreachable states") {
    Lts lts = parse_lts(minimal_source);
    lts.states.insert("s9");
    auto violations = validate(lts);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("s9") != std::string::npos);
    CHECK(violations[0].find("unreachable") != std::string::npos);
}

TEST_CASE("validate flags states that cannot reach a final") {
    // s3 is reachable but a trap; breadth-first search from each state is the
    // reference here and agrees by construction.
    Lts lts = parse_lts("lts T\ninitial s0\nfinal s1\ns0 -> s1 : !a\ns0 -> s3 : !b\n"
                        "s3 -> s3 : !c\n");
    auto violations = validate(lts);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("s3") != std::string::npos);
    CHECK(violations[0].find("final") != std::string::npos);
}

TEST_CASE("validate reports mutations of a valid machine") {
    Lts good = parse_lts(minimal_source);
    SUBCASE("dropped state") {
        Lts broken = good;
        broken.states.erase("s1");
        CHECK(!validate(broken).empty());
    }
    SUBCASE("orphaned transition") {
        Lts broken = good;
        broken.transitions.push_back(
            {"ghost", Action{ActionLabel{"x"}, Direction::Send}, "s1"});
        CHECK(!validate(broken).empty());
    }
    SUBCASE("no finals") {
        Lts broken = good;
        broken.finals.clear();
        CHECK(!validate(broken).empty());
    }
}

TEST_CASE("serialization round-trips and is byte-deterministic") {
    Lts lts = parse_lts(minimal_source);
    std::string once = serialize_lts(lts);
    CHECK(parse_lts(once).states == lts.states);
    CHECK(parse_lts(once).transitions == lts.transitions);
    CHECK(serialize_lts(parse_lts(once)) == once);

    // transition order in memory must not matter
    Lts shuffled = parse_lts("lts T\ninitial s0\nfinal s2\n"
                             "s0 -> s1 : !b\ns0 -> s1 : !a\ns1 -> s2 : ?c\n");
    std::reverse(shuffled.transitions.begin(), shuffled.transitions.end());
    CHECK(serialize_lts(shuffled) ==
          "lts T\ninitial s0\nfinal s2\ns0 -> s1 : !a\ns0 -> s1 : !b\ns1 -> s2 : ?c\n");
}

TEST_CASE("dot export marks initial and finals and lists each transition once") {
    Lts lts = parse_lts(minimal_source);
    std::string dot = export_dot(lts);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("__start -> \"s0\"") != std::string::npos);
    std::size_t labeled_edges = 0;
    for (std::size_t at = dot.find("[label="); at != std::string::npos;
         at = dot.find("[label=", at + 1))
        ++labeled_edges;
    CHECK(labeled_edges == 1);

    // accept-immediately machine: a node, no labeled edges
    std::string tiny = export_dot(parse_lts("lts T\ninitial s0\nfinal s0\n"));
    CHECK(tiny.find("[label=") == std::string::npos);
}

TEST_CASE("dot export colors port-qualified edges per side") {
    Lts lts = parse_lts("lts m\ninitial m0\nfinal m2\n"
                        "m0 -> m1 : ?L.msg\nm1 -> m2 : !R.msg\n");
    std::string dot = export_dot(lts);
    CHECK(dot.find("royalblue") != std::string::npos);
    CHECK(dot.find("firebrick") != std::string::npos);
}

TEST_CASE("action ordering follows the rendered form") {
    Action send_a{ActionLabel{"a"}, Direction::Send};
    Action recv_a{ActionLabel{"a"}, Direction::Receive};
    Action send_b{ActionLabel{"b"}, Direction::Send};
    CHECK(send_a < recv_a); // '!' before '?'
    CHECK(send_a < send_b);
    CHECK(send_a.render() == "!a");
    CHECK(recv_a.render() == "?a");
}
