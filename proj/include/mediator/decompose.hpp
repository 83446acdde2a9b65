// decompose.hpp -- breaks a component protocol into its elementary traces.

#pragma once

#include "mediator/lts.hpp"

namespace mediator {

struct DecomposeConfig {
    // A trace may occupy any single state at most unroll_bound + 1 times, so
    // bound 0 admits exactly the cycle-free paths and each increment unrolls
    // every loop once more.
    int unroll_bound = 1;
    int max_traces = 1000;
};

struct TraceSet {
    std::vector<Trace> traces; // deduplicated, sorted by (length, rendered form)
    bool truncated = false;    // true iff a further distinct trace exists beyond max_traces
};

// Enumerates every initial-to-final path within the unroll bound.
// Throws std::invalid_argument if the machine or the config is invalid.
TraceSet enumerate_traces(const Lts& lts, const DecomposeConfig& cfg = {});

// True iff the action sequence labels some initial-to-final path.
bool replays_to_final(const Lts& lts, const Trace& trace);

} // namespace mediator
