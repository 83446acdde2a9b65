// Command-line front end: flag parsing only, the work lives in the library.

#include "mediator/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CostFlag {
    std::vector<std::string> raw;
};

int apply_costs(const std::vector<std::string>& raw, mediator::AlignConfig& cfg) {
    for (const auto& spec : raw) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) {
            std::cerr << "bad --cost value '" << spec << "', expected KIND=N\n";
            return 2;
        }
        std::string kind = spec.substr(0, eq);
        int value = 0;
        try {
            value = std::stoi(spec.substr(eq + 1));
        } catch (...) {
            std::cerr << "bad --cost value '" << spec << "'\n";
            return 2;
        }
        if (value < 1) {
            std::cerr << "--cost " << kind << " must be >= 1\n";
            return 2;
        }
        if (kind == "translate")
            cfg.translate_cost = value;
        else if (kind == "split")
            cfg.split_cost = value;
        else if (kind == "merge")
            cfg.merge_cost = value;
        else if (kind == "reorder")
            cfg.reorder_cost = value;
        else if (kind == "consume")
            cfg.consume_cost = value;
        else if (kind == "produce")
            cfg.produce_cost = value;
        else {
            std::cerr << "unknown --cost kind '" << kind << "'\n";
            return 2;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mediator: synthesize and verify mediating connectors between "
                 "mismatched interaction protocols"};
    app.require_subcommand(1);

    mediator::RunConfig cfg;
    CostFlag costs;
    std::string out_dir = "out";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--unroll", cfg.decompose.unroll_bound,
                        "loop unrolling bound (state revisit budget)");
        cmd->add_option("--max-traces", cfg.decompose.max_traces,
                        "cap on decomposed traces per component");
        cmd->add_option("--reorder-window", cfg.align.reorder_window,
                        "maximum reorder window length");
        cmd->add_option("--cost", costs.raw, "step cost override KIND=N (repeatable)");
        cmd->add_option("--cap", cfg.verify.state_cap, "product state-space cap");
        cmd->add_option("--seed", cfg.seed, "random seed for simulation");
        cmd->add_option("--out", out_dir, "output directory");
    };

    std::vector<std::string> files;
    std::string left, right, map, med, lts;
    std::vector<std::size_t> script;

    CLI::App* validate = app.add_subcommand("validate", "check .lts / .map files");
    validate->add_option("files", files, "input files")->required();
    add_common(validate);

    CLI::App* decompose = app.add_subcommand("decompose", "list elementary traces");
    decompose->add_option("lts", lts, "protocol file")->required();
    add_common(decompose);

    CLI::App* match = app.add_subcommand("match", "align the two components' traces");
    match->add_option("left", left)->required();
    match->add_option("right", right)->required();
    match->add_option("map", map)->required();
    add_common(match);

    CLI::App* synthesize =
        app.add_subcommand("synthesize", "build the mediating connector");
    synthesize->add_option("left", left)->required();
    synthesize->add_option("right", right)->required();
    synthesize->add_option("map", map)->required();
    add_common(synthesize);

    CLI::App* verify = app.add_subcommand("verify", "explore left || mediator || right");
    verify->add_option("left", left)->required();
    verify->add_option("mediator", med)->required();
    verify->add_option("right", right)->required();
    add_common(verify);

    CLI::App* simulate = app.add_subcommand("simulate", "run one interleaving");
    simulate->add_option("left", left)->required();
    simulate->add_option("mediator", med)->required();
    simulate->add_option("right", right)->required();
    simulate->add_option("--script", script, "choice indices for the first steps");
    add_common(simulate);

    CLI::App* export_dot = app.add_subcommand("export-dot", "write a graphviz rendering");
    export_dot->add_option("lts", lts, "protocol file")->required();
    add_common(export_dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (int code = apply_costs(costs.raw, cfg.align); code != 0)
        return code;
    cfg.out = out_dir;
    cfg.script = script;

    std::ostream& out = std::cout;
    std::ostream& err = std::cerr;
    if (validate->parsed()) {
        std::vector<std::filesystem::path> paths(files.begin(), files.end());
        return mediator::cmd_validate(paths, out, err);
    }
    if (decompose->parsed())
        return mediator::cmd_decompose(lts, cfg, out, err);
    if (match->parsed())
        return mediator::cmd_match(left, right, map, cfg, out, err);
    if (synthesize->parsed())
        return mediator::cmd_synthesize(left, right, map, cfg, out, err);
    if (verify->parsed())
        return mediator::cmd_verify(left, med, right, cfg, out, err);
    if (simulate->parsed())
        return mediator::cmd_simulate(left, med, right, cfg, out, err);
    if (export_dot->parsed())
        return mediator::cmd_export_dot(lts, cfg, out, err);
    return 2;
}
