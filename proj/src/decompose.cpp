#include "mediator/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mediator {

namespace {

bool trace_order(const Trace& a, const Trace& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

struct Enumerator {
    const Lts& lts;
    int visit_limit;   // max occupations of one state within a path
    int max_traces;
    std::map<std::string, std::vector<const Transition*>> succ;
    std::map<std::string, int> visits;
    Trace path;
    std::set<Trace> found;
    bool truncated = false;
    bool stop = false;

    Enumerator(const Lts& l, const DecomposeConfig& cfg)
        : lts(l), visit_limit(cfg.unroll_bound + 1), max_traces(cfg.max_traces) {
        for (const auto& t : lts.transitions)
            succ[t.source].push_back(&t);
        // Expansion order fixes discovery order and thus the truncated prefix.
        for (auto& [state, ts] : succ)
            std::sort(ts.begin(), ts.end(),
                      [](const Transition* a, const Transition* b) { return *a < *b; });
    }

    void record() {
        if (found.count(path))
            return;
        if (static_cast<int>(found.size()) >= max_traces) {
            // One distinct trace beyond the cap proves the result incomplete.
            truncated = true;
            stop = true;
            return;
        }
        found.insert(path);
    }

    void walk(const std::string& state) {
        if (stop)
            return;
        if (lts.is_final(state))
            record();
        auto it = succ.find(state);
        if (it == succ.end())
            return;
        for (const Transition* t : it->second) {
            if (stop)
                return;
            int& count = visits[t->target];
            if (count + 1 > visit_limit)
                continue;
            ++count;
            path.push_back(t->action);
            walk(t->target);
            path.pop_back();
            --count;
        }
    }
};

} // namespace

TraceSet enumerate_traces(const Lts& lts, const DecomposeConfig& cfg) {
    if (cfg.unroll_bound < 0)
        throw std::invalid_argument("unroll_bound must be non-negative");
    if (cfg.max_traces < 1)
        throw std::invalid_argument("max_traces must be positive");
    if (auto violations = validate(lts); !violations.empty())
        throw std::invalid_argument("invalid machine: " + violations.front());

    Enumerator e(lts, cfg);
    e.visits[lts.initial] = 1; // starting occupancy counts as a visit
    e.walk(lts.initial);

    TraceSet result;
    result.traces.assign(e.found.begin(), e.found.end());
    std::sort(result.traces.begin(), result.traces.end(), trace_order);
    result.truncated = e.truncated;
    return result;
}

bool replays_to_final(const Lts& lts, const Trace& trace) {
    // Set-based replay; the machine may be nondeterministic.
    std::set<std::string> current{lts.initial};
    for (const auto& action : trace) {
        std::set<std::string> next;
        for (const auto& t : lts.transitions)
            if (current.count(t.source) && t.action == action)
                next.insert(t.target);
        if (next.empty())
            return false;
        current = std::move(next);
    }
    return std::any_of(current.begin(), current.end(),
                       [&](const std::string& s) { return lts.is_final(s); });
}

} // namespace mediator
