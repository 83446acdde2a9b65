// mismatch.hpp -- trace alignment and classification of behavioral mismatches.
//
// align() pairs a left trace with a right trace under the correspondence map
// using a dynamic program over (left index, right index). Each step consumes
// a span of each trace:
//
//   Forward    one action each side, opposite directions, same label
//   Translate  as Forward but across a rename entry
//   Consume    a lone send on one side, swallowed by the mediator
//   Produce    a lone receive on one side, satisfied by the mediator
//              (label must be declared producible)
//   Reorder    equal-length windows matched as a permutation of
//              forward/translate pairs, buffered and re-emitted
//   Split      one send matched to its declared multi-label expansion
//   Merge      a declared multi-label sequence matched to one receive
//
// A receive-send crisscross tail (left ?a.!b against right ?b.!a, both
// producible) is decomposed into produce/consume steps for each side rather
// than solved by reordering, which a rendezvous mediator could not execute.

#pragma once

#include "mediator/lts.hpp"
#include "mediator/semantics.hpp"

#include <optional>

namespace mediator {

enum class StepKind { Forward, Translate, Consume, Produce, Reorder, Split, Merge };

std::string step_kind_name(StepKind k);

struct ReorderPair {
    Side sender = Side::Left;
    std::size_t sender_index = 0;   // index in the sender's trace
    std::size_t receiver_index = 0; // index in the receiver's trace
    ActionLabel source;             // label sent
    ActionLabel target;             // label received (differs under a rename)
};

struct AlignStep {
    StepKind kind = StepKind::Forward;
    std::vector<std::size_t> left_span;  // indices into the left trace
    std::vector<std::size_t> right_span; // indices into the right trace
    std::vector<ActionLabel> labels;     // labels involved, reporting order

    // Forward/Translate/Split/Merge: the sending component.
    // Consume: the side whose send is swallowed.
    // Produce: the side toward which the mediator emits.
    Side side = Side::Left;

    ActionLabel source_label;              // forward/translate/consume/produce
    ActionLabel target_label;              // forward/translate
    std::vector<ActionLabel> source_labels; // split: whole; merge: parts
    std::vector<ActionLabel> target_labels; // split: parts; merge: whole
    std::vector<ReorderPair> pairs;         // reorder only

    // Marks the produce/consume steps of a decomposed ordering crisscross.
    bool ordering_composite = false;
};

struct Alignment {
    std::vector<AlignStep> steps;
    int cost = 0;
};

// How far the two traces can be aligned when no complete alignment exists.
struct Frontier {
    std::size_t left_consumed = 0;
    std::size_t right_consumed = 0;
};

struct AlignResult {
    std::optional<Alignment> alignment;
    Frontier frontier;

    bool compatible() const { return alignment.has_value(); }
};

struct AlignConfig {
    int reorder_window = 4; // max reorder window length (permutation bound)

    // Step costs; forwarding is free, all mismatch steps cost >= 1. A reorder
    // costs reorder_cost per displaced pair (pair taking part in an
    // inversion) plus translate_cost per renamed pair.
    int translate_cost = 1;
    int split_cost = 1;
    int merge_cost = 1;
    int reorder_cost = 2;
    int consume_cost = 3;
    int produce_cost = 4;
};

// Minimum-cost alignment; ties resolved by step-kind priority
// forward > translate > split > merge > reorder > consume > produce,
// then by the smaller left (then right) index. On failure the frontier
// reports the longest alignable prefix pair.
AlignResult align(const Trace& left, const Trace& right,
                  const CorrespondenceMap& map, const AlignConfig& cfg = {});

struct MismatchInstance {
    int pattern = 0;          // 1 consumer, 2 producer, 3 translator,
                              // 4 ordering, 5 splitting, 6 merger
    std::string variant;      // "base", "a", "b", "c", or "4c" for the
                              // decomposed ordering crisscross
    std::size_t step_index = 0;
    std::vector<ActionLabel> labels;
    std::vector<std::size_t> left_span;
    std::vector<std::size_t> right_span;
};

struct MismatchReport {
    std::vector<MismatchInstance> instances; // one per non-forward step
    bool compatible = false;
};

MismatchReport classify(const Alignment& alignment);
MismatchReport classify(const AlignResult& result);

// Line-oriented rendering with stable field order, suitable for golden files.
std::string render_report(const AlignResult& result);

struct MatchMatrix {
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<AlignResult> cells; // row-major: left index * right_count + right index
    bool verdict = false;           // at least one compatible pair

    const AlignResult& at(std::size_t l, std::size_t r) const;
};

// Aligns every pair of decomposed traces; deterministic iteration order.
MatchMatrix match_components(const std::vector<Trace>& left_traces,
                             const std::vector<Trace>& right_traces,
                             const CorrespondenceMap& map, const AlignConfig& cfg = {});

std::string render_match_report(const MatchMatrix& matrix);

} // namespace mediator
