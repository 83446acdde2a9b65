#include "mediator/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mediator {

Trace parse_trace_source(std::string_view text) {
    Trace trace;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (!line.empty()) {
            Action a;
            if (line[0] == '!')
                a.direction = Direction::Send;
            else if (line[0] == '?')
                a.direction = Direction::Receive;
            else
                throw ParseError("expected '!' or '?'", line_no, 1);
            a.label.name = std::string(line.substr(1));
            if (a.label.name.empty() ||
                a.label.name.find_first_of(" \t") != std::string::npos)
                throw ParseError("bad action label", line_no, 2);
            trace.push_back(std::move(a));
        }
        if (end == text.size())
            break;
        start = end + 1;
    }
    return trace;
}

Lts trace_to_lts(const Trace& trace, const std::string& name) {
    Lts lts;
    lts.name = name;
    lts.initial = "t0";
    lts.states.insert("t0");
    for (std::size_t k = 0; k < trace.size(); ++k) {
        std::string src = "t" + std::to_string(k);
        std::string dst = "t" + std::to_string(k + 1);
        lts.states.insert(dst);
        lts.transitions.push_back({src, trace[k], dst});
    }
    lts.finals.insert("t" + std::to_string(trace.size()));
    return lts;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

std::vector<GoldenCase> load_corpus(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> case_dirs;
    if (std::filesystem::exists(dir))
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_directory())
                case_dirs.push_back(entry.path());
    std::sort(case_dirs.begin(), case_dirs.end());

    std::vector<GoldenCase> corpus;
    for (const auto& case_dir : case_dirs) {
        GoldenCase c;
        c.id = case_dir.filename().string();
        try {
            auto load_side = [&](const char* stem, Lts& machine, Trace& trace) {
                auto trace_path = case_dir / (std::string(stem) + ".trace");
                auto lts_path = case_dir / (std::string(stem) + ".lts");
                if (std::filesystem::exists(trace_path)) {
                    trace = parse_trace_source(read_file(trace_path));
                    machine = trace_to_lts(trace, stem);
                    return CaseKind::TracePair;
                }
                if (std::filesystem::exists(lts_path)) {
                    machine = parse_lts(read_file(lts_path));
                    return CaseKind::MachinePair;
                }
                throw std::runtime_error(std::string("missing ") + stem +
                                         ".trace or " + stem + ".lts");
            };
            CaseKind lk = load_side("left", c.left, c.left_trace);
            CaseKind rk = load_side("right", c.right, c.right_trace);
            if (lk != rk)
                throw std::runtime_error("left and right sources must both be "
                                         "traces or both be machines");
            c.kind = lk;
            c.map = parse_map(read_file(case_dir / "names.map"));
            c.expected_report = read_file(case_dir / "expected.report");
            c.expected_mediator = read_file(case_dir / "expected.mediator");
            for (const Lts* m : {&c.left, &c.right})
                if (auto violations = validate(*m); !violations.empty())
                    throw std::runtime_error(m->name + ": " + violations.front());
        } catch (const std::exception& e) {
            throw std::runtime_error("case " + c.id + ": " + e.what());
        }
        corpus.push_back(std::move(c));
    }
    return corpus;
}

} // namespace mediator
