// fixtures.hpp -- the golden corpus loader: mismatch catalog cases and the
// end-to-end messenger pair as machine-readable test data.

#pragma once

#include "mediator/lts.hpp"
#include "mediator/semantics.hpp"

#include <filesystem>

namespace mediator {

enum class CaseKind {
    TracePair,   // left.trace / right.trace: one elementary behavior per side
    MachinePair, // left.lts / right.lts: full protocols, exercised end to end
};

struct GoldenCase {
    std::string id; // directory name, e.g. "pattern1_base"
    CaseKind kind = CaseKind::TracePair;
    Lts left;
    Lts right;
    Trace left_trace;  // TracePair only
    Trace right_trace; // TracePair only
    CorrespondenceMap map;
    std::string expected_report;   // rendered mismatch report, exact bytes
    std::string expected_mediator; // rendered mediator trace, exact bytes
};

// Parses a ".trace" file: one action per line ("!msg" / "?ack"), '#'
// comments allowed.
Trace parse_trace_source(std::string_view text);

// Wraps a single trace into the equivalent linear machine t0 -> ... -> tN.
Lts trace_to_lts(const Trace& trace, const std::string& name);

// Loads every case directory under `dir` (sorted by name). A case holds
// left/right sources (.trace or .lts), names.map, expected.report and
// expected.mediator. Throws on malformed or incomplete cases.
std::vector<GoldenCase> load_corpus(const std::filesystem::path& dir);

} // namespace mediator
