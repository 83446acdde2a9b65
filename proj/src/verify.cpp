#include "mediator/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>

namespace mediator {

std::string render_product_state(const ProductState& s) {
    return "left=" + s.left + " mediator=" + s.mediator + " right=" + s.right;
}

namespace {

struct Machine {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    std::vector<bool> final_flag;
    // per state, sorted by (label, direction, target index) for determinism
    std::vector<std::vector<std::tuple<ActionLabel, Direction, std::size_t>>> out;
    std::size_t initial = 0;

    explicit Machine(const Lts& lts) {
        for (const auto& s : lts.states) {
            index[s] = names.size();
            names.push_back(s);
        }
        final_flag.resize(names.size());
        for (const auto& f : lts.finals)
            final_flag[index.at(f)] = true;
        out.resize(names.size());
        std::vector<Transition> sorted = lts.transitions;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& t : sorted)
            out[index.at(t.source)].emplace_back(t.action.label, t.action.direction,
                                                 index.at(t.target));
        initial = index.at(lts.initial);
    }
};

struct Sync {
    Side port;
    ActionLabel label;
    Direction component_direction;
    std::size_t left, med, right; // successor triple
};

// All rendezvous enabled at (l, m, r): a mediator port action paired with
// the complementary component action of the same label.
std::vector<Sync> enabled_syncs(const Machine& left, const Machine& med,
                                const Machine& right, std::size_t l, std::size_t m,
                                std::size_t r) {
    std::vector<Sync> out;
    for (const auto& [mlabel, mdir, mtarget] : med.out[m]) {
        const std::string& qualified = mlabel.name;
        if (qualified.size() < 3 || qualified[1] != '.' ||
            (qualified[0] != 'L' && qualified[0] != 'R'))
            continue;
        Side port = qualified[0] == 'L' ? Side::Left : Side::Right;
        ActionLabel plain{qualified.substr(2)};
        const Machine& comp = port == Side::Left ? left : right;
        std::size_t at = port == Side::Left ? l : r;
        Direction comp_dir =
            mdir == Direction::Receive ? Direction::Send : Direction::Receive;
        for (const auto& [clabel, cdir, ctarget] : comp.out[at]) {
            if (clabel != plain || cdir != comp_dir)
                continue;
            Sync s{port, plain, comp_dir, l, mtarget, r};
            (port == Side::Left ? s.left : s.right) = ctarget;
            out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end(), [](const Sync& a, const Sync& b) {
        return std::tie(a.port, a.label, a.component_direction, a.left, a.med, a.right) <
               std::tie(b.port, b.label, b.component_direction, b.left, b.med, b.right);
    });
    return out;
}

std::vector<std::string> alphabet_warnings(const Lts& left, const Lts& mediator,
                                           const Lts& right) {
    std::vector<std::string> warnings;
    std::set<std::string> med_labels;
    for (const auto& t : mediator.transitions) {
        const std::string& n = t.action.label.name;
        if (n.size() >= 3 && n[1] == '.' && (n[0] == 'L' || n[0] == 'R'))
            med_labels.insert(n);
        else
            warnings.push_back("mediator label '" + n + "' is not port-qualified");
    }
    auto scan = [&](const Lts& comp, char port, const char* side_name) {
        std::set<ActionLabel> seen;
        for (const auto& t : comp.transitions)
            seen.insert(t.action.label);
        for (const auto& label : seen)
            if (!med_labels.count(std::string(1, port) + "." + label.name))
                warnings.push_back(std::string(side_name) + " label '" + label.name +
                                   "' is never matched by the mediator");
    };
    scan(left, 'L', "left");
    scan(right, 'R', "right");
    std::sort(warnings.begin(), warnings.end());
    warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
    return warnings;
}

} // namespace

Product parallel_compose(const Lts& left, const Lts& mediator, const Lts& right,
                         const VerifyConfig& cfg) {
    Machine lm(left), mm(mediator), rm(right);

    Product product;
    product.warnings = alphabet_warnings(left, mediator, right);

    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
    std::deque<std::tuple<std::size_t, std::size_t, std::size_t>> queue;

    auto intern = [&](std::size_t l, std::size_t m, std::size_t r) {
        auto key = std::make_tuple(l, m, r);
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        if (product.states.size() >= cfg.state_cap)
            throw CapExceeded("product state count exceeds the cap of " +
                              std::to_string(cfg.state_cap));
        std::size_t id = product.states.size();
        index.emplace(key, id);
        product.states.push_back({lm.names[l], mm.names[m], rm.names[r]});
        product.all_final.push_back(lm.final_flag[l] && mm.final_flag[m] &&
                                    rm.final_flag[r]);
        queue.push_back(key);
        return id;
    };

    intern(lm.initial, mm.initial, rm.initial);
    while (!queue.empty()) {
        auto [l, m, r] = queue.front();
        queue.pop_front();
        std::size_t from = index.at(std::make_tuple(l, m, r));
        for (const Sync& s : enabled_syncs(lm, mm, rm, l, m, r)) {
            std::size_t to = intern(s.left, s.med, s.right);
            product.transitions.push_back(
                {from, to, s.port, s.label, s.component_direction});
        }
    }
    return product;
}

VerifyReport check(const Product& product) {
    VerifyReport report;
    report.state_count = product.states.size();
    report.transition_count = product.transitions.size();

    std::vector<bool> has_out(product.states.size(), false);
    for (const auto& t : product.transitions)
        has_out[t.from] = true;

    for (std::size_t s = 0; s < product.states.size(); ++s) {
        if (product.all_final[s])
            report.goal_reachable = true;
        else if (!has_out[s])
            report.stuck_states.push_back(product.states[s]);
    }
    report.deadlock_free = report.stuck_states.empty();
    return report;
}

std::string render_verify_report(const VerifyReport& report) {
    std::ostringstream out;
    out << "deadlock_free=" << (report.deadlock_free ? "true" : "false") << "\n";
    out << "goal_reachable=" << (report.goal_reachable ? "true" : "false") << "\n";
    out << "states=" << report.state_count << "\n";
    out << "transitions=" << report.transition_count << "\n";
    out << "stuck=" << report.stuck_states.size() << "\n";
    for (const auto& s : report.stuck_states)
        out << "stuck_state " << render_product_state(s) << "\n";
    return out.str();
}

SimLog simulate(const Lts& left, const Lts& mediator, const Lts& right,
                const std::vector<std::size_t>& script, std::uint64_t seed,
                std::size_t max_steps) {
    Machine lm(left), mm(mediator), rm(right);
    std::mt19937_64 rng(seed);

    SimLog log;
    std::size_t l = lm.initial, m = mm.initial, r = rm.initial;
    for (std::size_t step = 1; step <= max_steps; ++step) {
        auto syncs = enabled_syncs(lm, mm, rm, l, m, r);
        if (syncs.empty()) {
            log.outcome = lm.final_flag[l] && mm.final_flag[m] && rm.final_flag[r]
                              ? SimOutcome::AllFinal
                              : SimOutcome::Stuck;
            log.halted_at = {lm.names[l], mm.names[m], rm.names[r]};
            return log;
        }
        std::size_t choice;
        if (step - 1 < script.size()) {
            choice = script[step - 1];
            if (choice >= syncs.size())
                throw std::out_of_range("script index " + std::to_string(choice) +
                                        " out of range (" + std::to_string(syncs.size()) +
                                        " choices enabled at step " +
                                        std::to_string(step) + ")");
        } else {
            // engine() % n is portable across standard libraries, unlike
            // uniform_int_distribution
            choice = syncs.size() == 1 ? 0 : rng() % syncs.size();
        }
        const Sync& s = syncs[choice];
        log.events.push_back({step, s.port, s.label, s.component_direction});
        l = s.left;
        m = s.med;
        r = s.right;
    }
    log.outcome = SimOutcome::MaxSteps;
    log.halted_at = {lm.names[l], mm.names[m], rm.names[r]};
    return log;
}

std::string render_sim_log(const SimLog& log) {
    std::ostringstream out;
    for (const auto& e : log.events)
        out << "step=" << e.step << " port=" << side_letter(e.port)
            << " label=" << e.label.name << " dir="
            << (e.component_direction == Direction::Send ? "send" : "recv") << "\n";
    switch (log.outcome) {
    case SimOutcome::AllFinal:
        out << "result=all-final\n";
        break;
    case SimOutcome::Stuck:
        out << "result=STUCK " << render_product_state(log.halted_at) << "\n";
        break;
    case SimOutcome::MaxSteps:
        out << "result=max-steps " << render_product_state(log.halted_at) << "\n";
        break;
    }
    return out.str();
}

} // namespace mediator
