#include "mediator/mismatch.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>

using namespace mediator;
using mediator::testing::trace;

namespace {

std::vector<StepKind> kinds(const Alignment& a) {
    std::vector<StepKind> out;
    for (const auto& s : a.steps)
        out.push_back(s.kind);
    return out;
}

// Span partition: each trace index appears in exactly one step.
void check_partition(const Alignment& a, std::size_t nl, std::size_t nr) {
    std::multiset<std::size_t> left, right;
    for (const auto& s : a.steps) {
        left.insert(s.left_span.begin(), s.left_span.end());
        right.insert(s.right_span.begin(), s.right_span.end());
    }
    std::multiset<std::size_t> want_left, want_right;
    for (std::size_t i = 0; i < nl; ++i)
        want_left.insert(i);
    for (std::size_t j = 0; j < nr; ++j)
        want_right.insert(j);
    CHECK(left == want_left);
    CHECK(right == want_right);
}

// Side-swapped view of an alignment for the symmetry property.
std::multiset<std::string> step_fingerprints(const Alignment& a, bool swap_sides) {
    std::multiset<std::string> out;
    for (const auto& s : a.steps) {
        std::string fp = step_kind_name(s.kind);
        auto span_str = [](const std::vector<std::size_t>& v) {
            std::string o = "[";
            for (auto i : v)
                o += std::to_string(i) + ",";
            return o + "]";
        };
        const auto& l = swap_sides ? s.right_span : s.left_span;
        const auto& r = swap_sides ? s.left_span : s.right_span;
        fp += " l" + span_str(l) + " r" + span_str(r);
        out.insert(fp);
    }
    return out;
}

} // namespace

TEST_CASE("extra send is consumed after the shared message forwards") {
    auto result = align(trace({"?m1", "!m2"}), trace({"!m1"}), CorrespondenceMap{});
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) ==
          std::vector<StepKind>{StepKind::Forward, StepKind::Consume});
    CHECK(result.alignment->steps[1].side == Side::Left);
    auto report = classify(*result.alignment);
    REQUIRE(report.instances.size() == 1);
    CHECK(report.instances[0].pattern == 1);
    CHECK(report.instances[0].variant == "base");
    check_partition(*result.alignment, 2, 1);
}

TEST_CASE("missing send is produced when declared producible") {
    CorrespondenceMap map = parse_map("producible m2\n");
    auto result = align(trace({"?m1"}), trace({"!m1", "?m2"}), map);
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) ==
          std::vector<StepKind>{StepKind::Forward, StepKind::Produce});
    auto report = classify(*result.alignment);
    REQUIRE(report.instances.size() == 1);
    CHECK(report.instances[0].pattern == 2);
    CHECK(report.instances[0].variant == "base");
}

TEST_CASE("renamed messages translate") {
    CorrespondenceMap map = parse_map("Information <-> Request\n");
    auto result = align(trace({"!Information"}), trace({"?Request"}), map);
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) == std::vector<StepKind>{StepKind::Translate});
    auto report = classify(*result.alignment);
    CHECK(report.instances[0].pattern == 3);
    CHECK(report.instances[0].variant == "base");
}

TEST_CASE("swapped sends reorder") {
    auto result = align(trace({"!m1", "!m2"}), trace({"?m2", "?m1"}), CorrespondenceMap{});
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) == std::vector<StepKind>{StepKind::Reorder});
    auto report = classify(*result.alignment);
    CHECK(report.instances[0].pattern == 4);
    check_partition(*result.alignment, 2, 2);
}

TEST_CASE("declared split matches one send against its parts") {
    CorrespondenceMap map = parse_map("FirstLastName <-> FirstName, LastName\n");
    auto result =
        align(trace({"!FirstLastName"}), trace({"?FirstName", "?LastName"}), map);
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) == std::vector<StepKind>{StepKind::Split});
    CHECK(classify(*result.alignment).instances[0].pattern == 5);
}

TEST_CASE("declared merge matches many sends against one receive") {
    CorrespondenceMap map = parse_map("FirstName, LastName <-> FirstLastName\n");
    auto result =
        align(trace({"!FirstName", "!LastName"}), trace({"?FirstLastName"}), map);
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) == std::vector<StepKind>{StepKind::Merge});
    CHECK(classify(*result.alignment).instances[0].pattern == 6);
}

TEST_CASE("complementary traces align with forwards only") {
    auto result = align(trace({"!a", "?b"}), trace({"?a", "!b"}), CorrespondenceMap{});
    REQUIRE(result.compatible());
    CHECK(result.alignment->cost == 0);
    CHECK(kinds(*result.alignment) ==
          std::vector<StepKind>{StepKind::Forward, StepKind::Forward});
    auto report = classify(*result.alignment);
    CHECK(report.compatible);
    CHECK(report.instances.empty());
}

TEST_CASE("an unmapped missing send is incompatible") {
    // The left send can always be consumed; the right receive has no
    // producer. The exhaustive searcher confirms no step sequence completes.
    Trace left = trace({"!secret"});
    Trace right = trace({"?secret2"});
    CHECK(!oracle::min_alignment_cost(left, right, CorrespondenceMap{}).has_value());
    auto result = align(left, right, CorrespondenceMap{});
    CHECK(!result.compatible());
    CHECK(result.frontier.left_consumed == 1); // the consume is still reachable
    CHECK(result.frontier.right_consumed == 0);
}

TEST_CASE("receive-send crisscross decomposes into producers and consumers") {
    CorrespondenceMap map = parse_map("producible m1, m2\n");
    auto result = align(trace({"?m1", "!m2"}), trace({"?m2", "!m1"}), map);
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) ==
          std::vector<StepKind>{StepKind::Produce, StepKind::Consume, StepKind::Produce,
                                StepKind::Consume});
    CHECK(result.alignment->steps[0].side == Side::Left);
    CHECK(result.alignment->steps[0].source_label.name == "m1");
    CHECK(result.alignment->steps[2].side == Side::Right);
    auto report = classify(*result.alignment);
    REQUIRE(report.instances.size() == 4);
    CHECK(report.instances[0].pattern == 2);
    CHECK(report.instances[1].pattern == 1);
    CHECK(report.instances[2].pattern == 2);
    CHECK(report.instances[3].pattern == 1);
    for (const auto& inst : report.instances)
        CHECK(inst.variant == "4c");
    check_partition(*result.alignment, 2, 2);
}

TEST_CASE("crisscross without producibility falls back to cost optimization") {
    CorrespondenceMap map = parse_map("producible m1\n");
    auto result = align(trace({"?m1", "!m2"}), trace({"?m2", "!m1"}), map);
    REQUIRE(result.compatible());
    // produce m1 toward the left, forward m2, consume the right's m1
    CHECK(kinds(*result.alignment) ==
          std::vector<StepKind>{StepKind::Produce, StepKind::Forward, StepKind::Consume});
    auto expected = oracle::min_alignment_cost(trace({"?m1", "!m2"}),
                                               trace({"?m2", "!m1"}), map);
    REQUIRE(expected.has_value());
    CHECK(result.alignment->cost == *expected);
}

TEST_CASE("mixed-direction swap is a reordering, not produce/consume") {
    auto result = align(trace({"!m1", "?m2"}), trace({"!m2", "?m1"}), CorrespondenceMap{});
    REQUIRE(result.compatible());
    CHECK(kinds(*result.alignment) == std::vector<StepKind>{StepKind::Reorder});
    auto report = classify(*result.alignment);
    CHECK(report.instances[0].pattern == 4);
    CHECK(report.instances[0].variant == "b");
}

TEST_CASE("reordering respects the window bound") {
    // A full reversal of five sends cannot fit a window of four.
    Trace left = trace({"!a", "!b", "!c", "!d", "!e"});
    Trace right = trace({"?e", "?d", "?c", "?b", "?a"});
    auto result = align(left, right, CorrespondenceMap{});
    CHECK(!result.compatible());

    AlignConfig wide;
    wide.reorder_window = 5;
    auto fits = align(left, right, CorrespondenceMap{}, wide);
    CHECK(fits.compatible());
}

TEST_CASE("variant tagging distinguishes the consumer and producer shapes") {
    CorrespondenceMap none;
    auto variant_of = [&](const Trace& l, const Trace& r, const CorrespondenceMap& m) {
        auto result = align(l, r, m);
        REQUIRE(result.compatible());
        auto report = classify(*result.alignment);
        REQUIRE(report.instances.size() == 1);
        return report.instances[0].variant;
    };
    CHECK(variant_of(trace({"?m1", "!m2"}), trace({"!m1"}), none) == "base");
    CHECK(variant_of(trace({"!m1", "!m2"}), trace({"?m1"}), none) == "a");
    CHECK(variant_of(trace({"!m1", "!m2"}), trace({"?m2"}), none) == "b");
    CHECK(variant_of(trace({"!m1", "?m2"}), trace({"!m2"}), none) == "c");

    CorrespondenceMap p2 = parse_map("producible m2\n");
    CorrespondenceMap p1 = parse_map("producible m1\n");
    CHECK(variant_of(trace({"?m1"}), trace({"!m1", "?m2"}), p2) == "base");
    CHECK(variant_of(trace({"!m1"}), trace({"?m1", "?m2"}), p2) == "a");
    CHECK(variant_of(trace({"?m2"}), trace({"?m1", "!m2"}), p1) == "b");
    CHECK(variant_of(trace({"?m1", "!m2"}), trace({"?m2"}), p1) == "c");

    CorrespondenceMap rename = parse_map("m1 <-> m2\n");
    CHECK(variant_of(trace({"?m1"}), trace({"!m2"}), rename) == "a"); // right-to-left translate
}

TEST_CASE("small instances are cost-optimal against exhaustive search") {
    std::mt19937_64 rng(20260809);
    int checked = 0;
    for (int round = 0; round < 200; ++round) {
        Trace left = oracle::random_trace(rng);
        Trace right = oracle::random_trace(rng);
        CorrespondenceMap map = oracle::random_map(rng);
        auto expected = oracle::min_alignment_cost(left, right, map);
        auto result = align(left, right, map);
        REQUIRE(result.compatible() == expected.has_value());
        if (expected) {
            CHECK(result.alignment->cost == *expected);
            check_partition(*result.alignment, left.size(), right.size());
            ++checked;
        }
    }
    CHECK(checked > 20); // the sample must actually exercise compatible pairs
}

TEST_CASE("alignment is symmetric under trace and map mirroring") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 100; ++round) {
        Trace left = oracle::random_trace(rng);
        Trace right = oracle::random_trace(rng);
        CorrespondenceMap map = oracle::random_map(rng);
        auto ab = align(left, right, map);
        auto ba = align(right, left, mirrored(map));
        REQUIRE(ab.compatible() == ba.compatible());
        if (ab.compatible()) {
            CHECK(ab.alignment->cost == ba.alignment->cost);
            CHECK(step_fingerprints(*ab.alignment, false) ==
                  step_fingerprints(*ba.alignment, true));
        }
    }
}

TEST_CASE("match matrix covers every pair and aggregates the verdict") {
    CorrespondenceMap none;
    auto single = match_components({trace({"!a"})}, {trace({"?a"})}, none);
    CHECK(single.left_count == 1);
    CHECK(single.right_count == 1);
    CHECK(single.verdict);
    CHECK(single.at(0, 0).compatible());

    // disjoint vocabularies where each side also expects a receive: no step
    // sequence is ever enabled past the sends
    auto disjoint = match_components({trace({"!hello", "?hello_ok"})},
                                     {trace({"!hi", "?hi_ok"})}, none);
    CHECK(!disjoint.verdict);

    std::string text = render_match_report(disjoint);
    CHECK(text.find("verdict=false") == 0);
}

TEST_CASE("reports render deterministically with stable fields") {
    auto result = align(trace({"?m1", "!m2"}), trace({"!m1"}), CorrespondenceMap{});
    CHECK(render_report(result) ==
          "compatible=true\n"
          "cost=3\n"
          "instance pattern=1 variant=base labels=m2 left=1 right=-\n");
    auto bad = align(trace({"!secret"}), trace({"?secret2"}), CorrespondenceMap{});
    CHECK(render_report(bad) ==
          "compatible=false\n"
          "frontier_left=1\n"
          "frontier_right=0\n");
}

TEST_CASE("config validation") {
    AlignConfig bad;
    bad.consume_cost = 0;
    CHECK_THROWS_AS(align(trace({"!a"}), trace({"?a"}), CorrespondenceMap{}, bad),
                    std::invalid_argument);
    AlignConfig zero_window;
    zero_window.reorder_window = 0;
    CHECK_THROWS_AS(align(trace({"!a"}), trace({"?a"}), CorrespondenceMap{}, zero_window),
                    std::invalid_argument);
}
