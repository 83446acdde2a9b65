// verify.hpp -- closed-system exploration of left || mediator || right.
//
// Synchronization is binary blocking rendezvous: the left component's !m
// pairs with the mediator's L-port receive of m, the mediator's L-port send
// of m with the left component's ?m, and symmetrically on the right port.
// The components never synchronize with each other directly.

#pragma once

#include "mediator/lts.hpp"
#include "mediator/semantics.hpp"

#include <cstdint>
#include <optional>

namespace mediator {

struct ProductState {
    std::string left;
    std::string mediator;
    std::string right;

    bool operator==(const ProductState&) const = default;
};

std::string render_product_state(const ProductState& s);

struct ProductTransition {
    std::size_t from = 0;
    std::size_t to = 0;
    Side port = Side::Left;
    ActionLabel label;
    Direction component_direction = Direction::Send; // as performed by the component
};

// Explicit reachable product graph; state 0 is the initial triple, states
// are numbered in breadth-first discovery order.
struct Product {
    std::vector<ProductState> states;
    std::vector<bool> all_final; // per state: all three machines in finals
    std::vector<ProductTransition> transitions;
    std::vector<std::string> warnings; // alphabet mismatches, non-fatal
};

struct VerifyConfig {
    std::size_t state_cap = 1'000'000;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive breadth-first construction of the closed system. Throws
// CapExceeded when the reachable state count passes cfg.state_cap.
Product parallel_compose(const Lts& left, const Lts& mediator, const Lts& right,
                         const VerifyConfig& cfg = {});

struct VerifyReport {
    bool deadlock_free = false;
    bool goal_reachable = false;
    std::vector<ProductState> stuck_states; // non-final states with no successor
    std::size_t state_count = 0;
    std::size_t transition_count = 0;

    bool passed() const { return deadlock_free && goal_reachable; }
};

VerifyReport check(const Product& product);

std::string render_verify_report(const VerifyReport& report);

struct SimEvent {
    std::size_t step = 0;
    Side port = Side::Left;
    ActionLabel label;
    Direction component_direction = Direction::Send;
};

enum class SimOutcome { AllFinal, Stuck, MaxSteps };

struct SimLog {
    std::vector<SimEvent> events;
    SimOutcome outcome = SimOutcome::Stuck;
    ProductState halted_at;
};

// One concrete interleaving. Enabled synchronizations are enumerated in a
// fixed order (port, then label, direction, successor states); choices are
// taken from the script while it lasts, then from a seeded generator.
// Identical script/seed give identical logs. Throws std::out_of_range on a
// script index past the enabled count.
SimLog simulate(const Lts& left, const Lts& mediator, const Lts& right,
                const std::vector<std::size_t>& script = {},
                std::uint64_t seed = 0, std::size_t max_steps = 10000);

std::string render_sim_log(const SimLog& log);

} // namespace mediator
