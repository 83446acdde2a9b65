// semantics.hpp -- declared correspondence between two message vocabularies.

#pragma once

#include "mediator/lts.hpp"

#include <optional>

namespace mediator {

enum class Side { Left, Right };

Side other(Side s);
char side_letter(Side s); // 'L' / 'R'

enum class CorrespondenceKind { Identity, Rename, Split, Merge };

// One declared link between the left vocabulary and the right vocabulary.
// Exactly one side may list more than one label; the kind is derived from
// the arities and name equality. Ordered lists fix the canonical emission
// order for split/merge mediation.
struct Correspondence {
    std::vector<ActionLabel> left;
    std::vector<ActionLabel> right;
    CorrespondenceKind kind = CorrespondenceKind::Identity;

    bool operator==(const Correspondence&) const = default;
};

struct CorrespondenceMap {
    std::vector<Correspondence> entries;
    // Labels the mediator may emit unprompted (payload-free signals).
    std::set<ActionLabel> producible;
};

// Parses the ".map" source: "a, b <-> c" entry lines and "producible x, y"
// lines, '#' comments. Throws ParseError on many-to-many entries, a label
// repeated on one side, empty sides, or bad syntax.
CorrespondenceMap parse_map(std::string_view text);

// The unique entry listing `label` on `side`, if any.
std::optional<Correspondence> find_entry(const CorrespondenceMap& map,
                                         const ActionLabel& label, Side side);

// Like find_entry, but a label absent from all entries maps to itself.
Correspondence lookup(const CorrespondenceMap& map, const ActionLabel& label, Side side);

bool is_producible(const CorrespondenceMap& map, const ActionLabel& label);

// Swaps the two vocabularies; producibility is kept as-is.
CorrespondenceMap mirrored(const CorrespondenceMap& map);

// True iff a left-side occurrence of `left` and a right-side occurrence of
// `right` are linked one-to-one: either by an explicit 1-1 entry, or by name
// equality when neither label is mapped on its side (a declared entry
// suppresses the implicit identity of its labels).
bool corresponds_one_to_one(const CorrespondenceMap& map,
                            const ActionLabel& left, const ActionLabel& right);

} // namespace mediator
