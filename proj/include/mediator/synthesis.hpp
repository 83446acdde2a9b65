// synthesis.hpp -- mediator behavior: per-alignment traces and their
// prefix-tree composition into the connector LTS.

#pragma once

#include "mediator/lts.hpp"
#include "mediator/mismatch.hpp"
#include "mediator/semantics.hpp"

namespace mediator {

// One component-facing action of the mediator. A Receive on port P
// synchronizes with the P-side component's send of the same label; a Send
// with its receive.
struct MediatorAction {
    Side port = Side::Left;
    ActionLabel label;
    Direction direction = Direction::Send;

    // Rendered form, e.g. "?L.msg" (receive from the left component).
    std::string render() const;
    // The equivalent port-qualified LTS action ("L.msg" with the direction).
    Action as_lts_action() const;

    bool operator==(const MediatorAction&) const = default;
    std::strong_ordering operator<=>(const MediatorAction& other) const;
};

using MediatorTrace = std::vector<MediatorAction>;

std::string render_mediator_trace(const MediatorTrace& t); // one action per line

// Builds the mediating behavior for one alignment, concatenating per-step
// fragments in step order. The mediator relays every message: a forwarded or
// translated label is received from its sender and re-sent on the other
// port; reorder windows buffer all sends before re-emitting them in receiver
// order; split/merge follow the declared label order.
MediatorTrace mediator_trace(const Alignment& alignment);

// Prefix-tree merge of the mediating traces: traces sharing a prefix share
// states, every trace endpoint is final, the alphabet is port-qualified.
// Deterministic: traces are sorted before insertion, states are numbered in
// creation order.
Lts compose_mediator(const std::vector<MediatorTrace>& traces);

// The vacuous mediator for negative controls: a hub that forwards any label
// of either machine verbatim to the other port, with no translation,
// consumption, production or buffering beyond one in-flight message.
Lts identity_relay(const Lts& left, const Lts& right);

} // namespace mediator
