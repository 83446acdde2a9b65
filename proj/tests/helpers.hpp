// Small shared conveniences for the test suites.

#pragma once

#include "mediator/lts.hpp"

#include <string>
#include <vector>

namespace mediator::testing {

// Builds a trace from rendered actions, e.g. trace({"!a", "?b"}).
inline Trace trace(const std::vector<std::string>& rendered) {
    Trace t;
    for (const auto& r : rendered) {
        Action a;
        a.direction = r.at(0) == '!' ? Direction::Send : Direction::Receive;
        a.label.name = r.substr(1);
        t.push_back(a);
    }
    return t;
}

} // namespace mediator::testing
