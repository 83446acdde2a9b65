#include "mediator/cli.hpp"

#include "mediator/fixtures.hpp"
#include "mediator/synthesis.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace mediator {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

Lts load_lts(const std::filesystem::path& path) {
    try {
        return parse_lts(read_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

CorrespondenceMap load_map(const std::filesystem::path& path) {
    try {
        return parse_map(read_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

// Reports invariant violations; returns false (exit 1 situation) if any.
bool require_valid(const Lts& lts, const std::filesystem::path& path, std::ostream& err) {
    auto violations = validate(lts);
    for (const auto& v : violations)
        err << path.string() << ": " << v << "\n";
    return violations.empty();
}

std::string render_trace_set(const TraceSet& set) {
    std::string out;
    for (const auto& t : set.traces) {
        out += render_trace(t);
        out.push_back('\n');
    }
    if (set.truncated)
        out += "# truncated\n";
    return out;
}

std::string render_manifest(const char* command, const RunConfig& cfg,
                            const std::vector<std::pair<const char*, std::string>>& inputs) {
    std::ostringstream out;
    out << "tool=mediator " << tool_version << "\n";
    out << "command=" << command << "\n";
    for (const auto& [key, value] : inputs)
        out << key << "=" << value << "\n";
    out << "unroll=" << cfg.decompose.unroll_bound << "\n";
    out << "max_traces=" << cfg.decompose.max_traces << "\n";
    out << "reorder_window=" << cfg.align.reorder_window << "\n";
    out << "cost_translate=" << cfg.align.translate_cost << "\n";
    out << "cost_split=" << cfg.align.split_cost << "\n";
    out << "cost_merge=" << cfg.align.merge_cost << "\n";
    out << "cost_reorder=" << cfg.align.reorder_cost << "\n";
    out << "cost_consume=" << cfg.align.consume_cost << "\n";
    out << "cost_produce=" << cfg.align.produce_cost << "\n";
    out << "cap=" << cfg.verify.state_cap << "\n";
    out << "seed=" << cfg.seed << "\n";
    return out.str();
}

} // namespace

int cmd_validate(const std::vector<std::filesystem::path>& files, std::ostream& out,
                 std::ostream& err) {
    bool all_valid = true;
    for (const auto& path : files) {
        try {
            if (path.extension() == ".map") {
                load_map(path);
            } else {
                Lts lts = load_lts(path);
                if (!require_valid(lts, path, err)) {
                    all_valid = false;
                    continue;
                }
            }
            out << path.string() << ": ok\n";
        } catch (const std::exception& e) {
            err << e.what() << "\n";
            return 2;
        }
    }
    return all_valid ? 0 : 1;
}

int cmd_decompose(const std::filesystem::path& lts_path, const RunConfig& cfg,
                  std::ostream& out, std::ostream& err) {
    try {
        Lts lts = load_lts(lts_path);
        if (!require_valid(lts, lts_path, err))
            return 1;
        TraceSet set = enumerate_traces(lts, cfg.decompose);
        std::string text = render_trace_set(set);
        write_file(cfg.out / "traces.txt", text);
        out << text;
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_match(const std::filesystem::path& left_path,
              const std::filesystem::path& right_path,
              const std::filesystem::path& map_path, const RunConfig& cfg,
              std::ostream& out, std::ostream& err) {
    try {
        Lts left = load_lts(left_path);
        Lts right = load_lts(right_path);
        if (!require_valid(left, left_path, err) || !require_valid(right, right_path, err))
            return 1;
        CorrespondenceMap map = load_map(map_path);
        TraceSet lt = enumerate_traces(left, cfg.decompose);
        TraceSet rt = enumerate_traces(right, cfg.decompose);
        if (lt.truncated || rt.truncated) {
            err << "trace cap exceeded; raise --max-traces\n";
            return 2;
        }
        MatchMatrix matrix = match_components(lt.traces, rt.traces, map, cfg.align);
        std::string text = render_match_report(matrix);
        write_file(cfg.out / "match.report", text);
        out << text;
        return matrix.verdict ? 0 : 1;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_synthesize(const std::filesystem::path& left_path,
                   const std::filesystem::path& right_path,
                   const std::filesystem::path& map_path, const RunConfig& cfg,
                   std::ostream& out, std::ostream& err) {
    try {
        Lts left = load_lts(left_path);
        Lts right = load_lts(right_path);
        if (!require_valid(left, left_path, err) || !require_valid(right, right_path, err))
            return 1;
        CorrespondenceMap map = load_map(map_path);

        TraceSet lt = enumerate_traces(left, cfg.decompose);
        TraceSet rt = enumerate_traces(right, cfg.decompose);
        if (lt.truncated || rt.truncated) {
            err << "trace cap exceeded; raise --max-traces\n";
            return 2;
        }

        MatchMatrix matrix = match_components(lt.traces, rt.traces, map, cfg.align);
        std::string report = render_match_report(matrix);
        write_file(cfg.out / "left.traces", render_trace_set(lt));
        write_file(cfg.out / "right.traces", render_trace_set(rt));
        write_file(cfg.out / "match.report", report);
        write_file(cfg.out / "manifest.txt",
                   render_manifest("synthesize", cfg,
                                   {{"left", left_path.string()},
                                    {"right", right_path.string()},
                                    {"map", map_path.string()}}));
        out << report;

        if (!matrix.verdict) {
            err << "not potentially compatible: no trace pair aligns\n";
            return 1;
        }

        std::vector<MediatorTrace> traces;
        for (const auto& cell : matrix.cells)
            if (cell.compatible())
                traces.push_back(mediator_trace(*cell.alignment));
        Lts connector = compose_mediator(traces);
        write_file(cfg.out / "mediator.lts", serialize_lts(connector));
        write_file(cfg.out / "mediator.dot", export_dot(connector));
        out << "mediator states=" << connector.states.size()
            << " transitions=" << connector.transitions.size() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const std::filesystem::path& left_path,
               const std::filesystem::path& mediator_path,
               const std::filesystem::path& right_path, const RunConfig& cfg,
               std::ostream& out, std::ostream& err) {
    try {
        Lts left = load_lts(left_path);
        Lts med = load_lts(mediator_path);
        Lts right = load_lts(right_path);
        if (!require_valid(left, left_path, err) || !require_valid(med, mediator_path, err) ||
            !require_valid(right, right_path, err))
            return 1;
        Product product = parallel_compose(left, med, right, cfg.verify);
        for (const auto& w : product.warnings)
            err << "warning: " << w << "\n";
        VerifyReport report = check(product);
        std::string text = render_verify_report(report);
        write_file(cfg.out / "verify.report", text);
        out << text;
        return report.passed() ? 0 : 1;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_simulate(const std::filesystem::path& left_path,
                 const std::filesystem::path& mediator_path,
                 const std::filesystem::path& right_path, const RunConfig& cfg,
                 std::ostream& out, std::ostream& err) {
    try {
        Lts left = load_lts(left_path);
        Lts med = load_lts(mediator_path);
        Lts right = load_lts(right_path);
        if (!require_valid(left, left_path, err) || !require_valid(med, mediator_path, err) ||
            !require_valid(right, right_path, err))
            return 1;
        SimLog log = simulate(left, med, right, cfg.script, cfg.seed);
        std::string text = render_sim_log(log);
        write_file(cfg.out / "simulation.log", text);
        out << text;
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_export_dot(const std::filesystem::path& lts_path, const RunConfig& cfg,
                   std::ostream& out, std::ostream& err) {
    try {
        Lts lts = load_lts(lts_path);
        if (!require_valid(lts, lts_path, err))
            return 1;
        std::string text = export_dot(lts);
        write_file(cfg.out / (lts.name + ".dot"), text);
        out << text;
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

} // namespace mediator
