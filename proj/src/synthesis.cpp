#include "mediator/synthesis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mediator {

std::string MediatorAction::render() const {
    std::string out;
    out.push_back(direction_sigil(direction));
    out.push_back(side_letter(port));
    out.push_back('.');
    out += label.name;
    return out;
}

Action MediatorAction::as_lts_action() const {
    Action a;
    a.direction = direction;
    a.label.name = std::string(1, side_letter(port)) + "." + label.name;
    return a;
}

std::strong_ordering MediatorAction::operator<=>(const MediatorAction& other) const {
    // Rendered-form order: sigil, then port letter, then label.
    if (direction != other.direction)
        return direction == Direction::Send ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
    if (port != other.port)
        return port == Side::Left ? std::strong_ordering::less
                                  : std::strong_ordering::greater;
    return label <=> other.label;
}

std::string render_mediator_trace(const MediatorTrace& t) {
    std::string out;
    for (const auto& action : t) {
        out += action.render();
        out.push_back('\n');
    }
    return out;
}

namespace {

MediatorAction recv(Side port, const ActionLabel& label) {
    return MediatorAction{port, label, Direction::Receive};
}

MediatorAction send(Side port, const ActionLabel& label) {
    return MediatorAction{port, label, Direction::Send};
}

void append_reorder(const AlignStep& step, MediatorTrace& out) {
    // Buffer every send first, then re-emit in the receivers' order; ties
    // between the two ports go to the left one.
    auto pairs = step.pairs;
    std::sort(pairs.begin(), pairs.end(),
              [](const ReorderPair& a, const ReorderPair& b) {
                  if (a.sender_index != b.sender_index)
                      return a.sender_index < b.sender_index;
                  return a.sender == Side::Left && b.sender == Side::Right;
              });
    for (const auto& p : pairs)
        out.push_back(recv(p.sender, p.source));
    std::sort(pairs.begin(), pairs.end(),
              [](const ReorderPair& a, const ReorderPair& b) {
                  if (a.receiver_index != b.receiver_index)
                      return a.receiver_index < b.receiver_index;
                  return other(a.sender) == Side::Left && other(b.sender) == Side::Right;
              });
    for (const auto& p : pairs)
        out.push_back(send(other(p.sender), p.target));
}

} // namespace

MediatorTrace mediator_trace(const Alignment& alignment) {
    MediatorTrace out;
    for (const AlignStep& step : alignment.steps) {
        switch (step.kind) {
        case StepKind::Forward:
        case StepKind::Translate:
            out.push_back(recv(step.side, step.source_label));
            out.push_back(send(other(step.side), step.target_label));
            break;
        case StepKind::Consume:
            out.push_back(recv(step.side, step.source_label));
            break;
        case StepKind::Produce:
            out.push_back(send(step.side, step.source_label));
            break;
        case StepKind::Split:
            out.push_back(recv(step.side, step.source_labels[0]));
            for (const auto& part : step.target_labels)
                out.push_back(send(other(step.side), part));
            break;
        case StepKind::Merge:
            for (const auto& part : step.source_labels)
                out.push_back(recv(step.side, part));
            out.push_back(send(other(step.side), step.target_labels[0]));
            break;
        case StepKind::Reorder:
            append_reorder(step, out);
            break;
        }
    }
    return out;
}

Lts compose_mediator(const std::vector<MediatorTrace>& traces) {
    std::vector<MediatorTrace> sorted = traces;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    Lts lts;
    lts.name = "mediator";
    lts.initial = "m0";
    lts.states.insert("m0");

    std::vector<std::map<MediatorAction, std::size_t>> children(1);
    std::set<std::size_t> final_nodes;
    auto node_name = [](std::size_t n) { return "m" + std::to_string(n); };

    for (const auto& trace : sorted) {
        std::size_t node = 0;
        for (const auto& action : trace) {
            auto it = children[node].find(action);
            if (it == children[node].end()) {
                std::size_t next = children.size();
                children.emplace_back();
                children[node].emplace(action, next);
                lts.states.insert(node_name(next));
                lts.transitions.push_back(
                    {node_name(node), action.as_lts_action(), node_name(next)});
                node = next;
            } else {
                node = it->second;
            }
        }
        final_nodes.insert(node);
    }
    for (std::size_t n : final_nodes)
        lts.finals.insert(node_name(n));
    return lts;
}

Lts identity_relay(const Lts& left, const Lts& right) {
    std::set<ActionLabel> labels;
    for (const auto& t : left.transitions)
        labels.insert(t.action.label);
    for (const auto& t : right.transitions)
        labels.insert(t.action.label);

    Lts relay;
    relay.name = "identity_relay";
    relay.initial = "r0";
    relay.states.insert("r0");
    relay.finals.insert("r0");
    for (const auto& label : labels) {
        std::string lr = "lr_" + label.name;
        std::string rl = "rl_" + label.name;
        relay.states.insert(lr);
        relay.states.insert(rl);
        ActionLabel l_side{"L." + label.name};
        ActionLabel r_side{"R." + label.name};
        relay.transitions.push_back({"r0", Action{l_side, Direction::Receive}, lr});
        relay.transitions.push_back({lr, Action{r_side, Direction::Send}, "r0"});
        relay.transitions.push_back({"r0", Action{r_side, Direction::Receive}, rl});
        relay.transitions.push_back({rl, Action{l_side, Direction::Send}, "r0"});
    }
    return relay;
}

} // namespace mediator
