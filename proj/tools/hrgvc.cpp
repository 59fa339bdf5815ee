// hrgvc: generate hyperbolic random graphs, compute vertex covers, and
// compare the run against the structural predictors.

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "hrgvc/harness.hpp"

namespace {

using hrgvc::harness::Command;
using hrgvc::harness::ExperimentSpec;

struct Flags {
    std::vector<std::uint64_t> ns;
    std::optional<double> c;
    std::optional<double> avg_degree;
    std::optional<std::uint64_t> seed;
    std::vector<std::uint64_t> seeds;
    std::string algorithms;
    std::vector<double> taus;
    std::optional<std::size_t> component_limit;
    std::optional<std::int64_t> time_limit_s;
    std::string mode = "fixed";
    std::string builder = "accelerated";
};

void add_model_flags(CLI::App* cmd, ExperimentSpec& spec, Flags& f) {
    cmd->add_option("--n", f.ns, "vertex count(s), or the Poisson mean")->delimiter(',');
    cmd->add_option("--alpha", spec.alpha, "radial dispersion, in (1/2, 1)")->capture_default_str();
    auto* c = cmd->add_option("--c", f.c, "offset C in R = 2 ln n + C");
    cmd->add_option("--avg-degree", f.avg_degree, "calibrate C to this average degree")->excludes(c);
    cmd->add_option("--calibration-seeds", spec.calibration_seeds, "graphs averaged per calibration step")
        ->capture_default_str();
    auto* seed = cmd->add_option("--seed", f.seed, "single seed");
    cmd->add_option("--seeds", f.seeds, "comma list of seeds")->delimiter(',')->excludes(seed);
    cmd->add_option("--mode", f.mode, "fixed or poisson")
        ->check(CLI::IsMember({"fixed", "poisson"}))
        ->capture_default_str();
    cmd->add_option("--edge-builder", f.builder, "naive or accelerated")
        ->check(CLI::IsMember({"naive", "accelerated"}))
        ->capture_default_str();
}

void add_input_flags(CLI::App* cmd, ExperimentSpec& spec) {
    cmd->add_option("--input", spec.inputs, "edge list file (repeatable)");
    cmd->add_option("--coords", spec.coords, "coordinate sidecar, paired with --input by position");
}

void add_solver_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--algorithms", f.algorithms, "standard,adapted-degree,adapted-radius,exact");
    cmd->add_option("--tau", f.taus, "component size factor")->delimiter(',');
    cmd->add_option("--component-limit", f.component_limit, "explicit component size cap");
    cmd->add_option("--time-limit", f.time_limit_s, "exact solver limit in seconds");
}

void apply(const Flags& f, ExperimentSpec& spec) {
    if (!f.ns.empty()) spec.ns = f.ns;
    spec.c = f.c;
    spec.avg_degree = f.avg_degree;
    if (f.seed) spec.seeds = {*f.seed};
    if (!f.seeds.empty()) spec.seeds = f.seeds;
    if (!f.algorithms.empty()) spec.algorithms = hrgvc::harness::parse_algorithms(f.algorithms);
    if (!f.taus.empty()) spec.taus = f.taus;
    spec.component_limit = f.component_limit;
    if (f.time_limit_s) spec.time_limit = std::chrono::seconds(*f.time_limit_s);
    spec.mode = f.mode == "poisson" ? hrgvc::SamplingMode::PoissonN : hrgvc::SamplingMode::FixedN;
    spec.edge_builder = f.builder == "naive" ? hrgvc::EdgeBuilder::Naive : hrgvc::EdgeBuilder::Accelerated;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertex covers on hyperbolic random graphs"};
    app.require_subcommand(1);

    ExperimentSpec spec;
    Flags flags;
    std::map<CLI::App*, Command> commands;

    auto* gen = app.add_subcommand("generate", "sample a graph and write .edges/.coords files");
    add_model_flags(gen, spec, flags);
    gen->add_option("--output", spec.output, "output base path")->required();
    commands[gen] = Command::Generate;

    auto* solve = app.add_subcommand("solve", "run cover algorithms, CSV out");
    auto* eval = app.add_subcommand("evaluate", "run cover algorithms against the exact optimum, CSV out");
    auto* diag = app.add_subcommand("diagnose", "region counts and predictors per tau");
    for (auto* cmd : {solve, eval, diag}) {
        add_model_flags(cmd, spec, flags);
        add_input_flags(cmd, spec);
        add_solver_flags(cmd, flags);
        cmd->add_option("--output", spec.output, "CSV path (default stdout)");
        cmd->add_option("--threads", spec.threads, "worker threads, 0 for all cores");
    }
    commands[solve] = Command::Solve;
    commands[eval] = Command::Evaluate;
    commands[diag] = Command::Diagnose;

    auto* cal = app.add_subcommand("calibrate", "find C for a target average degree");
    add_model_flags(cal, spec, flags);
    cal->add_option("--output", spec.output, "CSV path (default stdout)");
    commands[cal] = Command::Calibrate;

    CLI11_PARSE(app, argc, argv);

    for (const auto& [cmd, command] : commands) {
        if (cmd->parsed()) spec.command = command;
    }
    try {
        apply(flags, spec);
        return hrgvc::harness::run(spec, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "hrgvc: " << e.what() << '\n';
        return 2;
    }
}
