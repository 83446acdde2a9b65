// lts.hpp -- labeled transition systems: the protocol model shared by all modules.

#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mediator {

enum class Direction { Send, Receive };

// '!' marks a send (output), '?' a receive (input).
char direction_sigil(Direction d);

// A message identifier. Plain component labels use [A-Za-z0-9_]+; mediator
// alphabets additionally use '.' for the port qualifier ("L.msg").
struct ActionLabel {
    std::string name;

    auto operator<=>(const ActionLabel&) const = default;
};

struct Action {
    ActionLabel label;
    Direction direction = Direction::Send;

    // Rendered form, e.g. "!ping" or "?ack".
    std::string render() const;

    bool operator==(const Action&) const = default;
    // Order matches the rendered form: sigil first, then label.
    std::strong_ordering operator<=>(const Action& other) const;
};

// One finite action sequence of an LTS, initial state to a final state.
using Trace = std::vector<Action>;

std::string render_trace(const Trace& t);

struct Transition {
    std::string source;
    Action action;
    std::string target;

    bool operator==(const Transition&) const = default;
    std::strong_ordering operator<=>(const Transition&) const;
};

// Rooted finite LTS with explicit final states.
struct Lts {
    std::string name;
    std::set<std::string> states;
    std::string initial;
    std::set<std::string> finals;
    std::vector<Transition> transitions;

    bool is_final(const std::string& state) const { return finals.count(state) != 0; }
};

struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;

    ParseError(const std::string& msg, int line_, int column_);
};

// Parses the line-oriented protocol source ("lts N / initial S / final S,...
// / S -> S : !m"). Throws ParseError on malformed input, unknown final
// states, a missing initial, an empty final set, or duplicate transitions.
Lts parse_lts(std::string_view text);

// Returns the list of invariant violations; empty iff the machine is valid.
// Checks membership of initial/finals/transition endpoints, reachability of
// every state from the initial one, and that every state can reach a final.
std::vector<std::string> validate(const Lts& lts);

// Deterministic serialization: finals sorted, transitions sorted by
// (source, label, direction, target). Output re-parses to an equal machine.
std::string serialize_lts(const Lts& lts);

// Graphviz rendering. Finals are doublecircled, the initial state gets a
// point-shaped entry marker. Port-qualified labels are colored: "L."-edges
// royalblue, "R."-edges firebrick.
std::string export_dot(const Lts& lts);

} // namespace mediator
