// iwalk: bounds on n-step expectations of random walks on interval-weighted
// graphs.

#include "iwalk/cli.hpp"
#include "iwalk/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace iwalk;

namespace {

struct ExperimentFlags {
    std::string config_path;
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> steps;
    std::size_t instances = 0;
    std::size_t starts = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> strategies;
    std::string sense;
    std::string out;
    std::size_t threads = 0;
    std::map<std::string, CLI::Option*> opts;
};

CLI::App* add_experiment(CLI::App& app, const char* name, const char* help, ExperimentFlags& f) {
    auto* sub = app.add_subcommand(name, help);
    f.opts["config"] = sub->add_option("--config", f.config_path, "JSON experiment config");
    f.opts["vertices"] = sub->add_option("--vertices", f.vertices, "vertex counts")->delimiter(',');
    f.opts["steps"] = sub->add_option("--steps", f.steps, "step counts")->delimiter(',');
    f.opts["instances"] = sub->add_option("--instances", f.instances, "instances per grid cell");
    f.opts["starts"] = sub->add_option("--starts", f.starts, "random starts per instance");
    f.opts["seed"] = sub->add_option("--seed", f.seed, "master seed");
    f.opts["strategy"] =
        sub->add_option("--strategy", f.strategies, "left-to-right | right-to-left")->delimiter(',');
    f.opts["sense"] = sub->add_option("--sense", f.sense, "min | max");
    f.opts["out"] = sub->add_option("--out", f.out, "output directory");
    f.opts["threads"] = sub->add_option("--threads", f.threads, "worker threads");
    return sub;
}

ExperimentConfig resolve(cli::Experiment kind, const ExperimentFlags& f) {
    ExperimentConfig c = cli::default_config(kind);
    if (f.opts.at("config")->count())
        c = read_config(f.config_path, c);
    auto given = [&](const char* key) { return f.opts.at(key)->count() > 0; };
    if (given("vertices"))
        c.vertices = f.vertices;
    if (given("steps"))
        c.steps = f.steps;
    if (given("instances"))
        c.instances = f.instances;
    if (given("starts"))
        c.starts = f.starts;
    if (given("seed"))
        c.seed = f.seed;
    if (given("strategy")) {
        c.strategies.clear();
        for (const auto& s : f.strategies)
            c.strategies.push_back(parse_sweep_order(s));
    }
    if (given("sense"))
        c.sense = parse_sense(f.sense);
    if (given("out"))
        c.output_dir = f.out;
    if (given("threads"))
        c.threads = f.threads;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds on n-step expectations for random walks on interval-weighted graphs"};
    app.require_subcommand(1);

    std::string path;

    auto* validate_cmd = app.add_subcommand("validate", "check an instance file");
    validate_cmd->add_option("instance", path, "instance file")->required();

    cli::BoundsOptions bopts;
    std::string bstrategy = "left-to-right";
    std::string bout;
    auto* bounds_cmd = app.add_subcommand("bounds", "multistart local search for lower/upper bounds");
    bounds_cmd->add_option("instance", path, "instance file")->required();
    bounds_cmd->add_option("--starts", bopts.starts, "random extremal starts")->capture_default_str();
    bounds_cmd->add_option("--seed", bopts.seed, "seed")->capture_default_str();
    bounds_cmd->add_option("--strategy", bstrategy, "left-to-right | right-to-left")->capture_default_str();
    bounds_cmd->add_option("--sense", bopts.sense, "min | max | both")->capture_default_str();
    bounds_cmd->add_option("--threads", bopts.threads, "worker threads")->capture_default_str();
    auto* bounds_out = bounds_cmd->add_option("--out", bout, "write a JSON result record here");

    cli::OracleOptions oopts;
    std::string oout;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact bounds by exhaustive enumeration");
    oracle_cmd->add_option("instance", path, "instance file")->required();
    oracle_cmd->add_option("--budget", oopts.budget, "maximum number of weight vectors")->capture_default_str();
    auto* oracle_out = oracle_cmd->add_option("--out", oout, "write a JSON result record here");

    cli::GenOptions gopts;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    gen_cmd->add_option("--vertices", gopts.params.vertices, "vertex count")->capture_default_str();
    gen_cmd->add_option("--steps", gopts.steps, "steps stored in the instance")->capture_default_str();
    gen_cmd->add_option("--seed", gopts.params.seed, "seed")->capture_default_str();
    gen_cmd->add_option("--out", gopts.out, "output instance file")->required();
    gen_cmd->add_option("--disconnect-fraction", gopts.params.disconnect_fraction)->capture_default_str();
    gen_cmd->add_option("--lower-mean", gopts.params.lower_mean)->capture_default_str();
    gen_cmd->add_option("--width-mean", gopts.params.width_mean)->capture_default_str();
    gen_cmd->add_option("--qf-mean", gopts.params.qf_mean)->capture_default_str();
    gen_cmd->add_option("--marginal-slack", gopts.params.marginal_slack)->capture_default_str();

    ExperimentFlags fcount, fsweep, fscatter, fdev;
    auto* count_cmd = add_experiment(app, "exp-count", "count unique local extrema over a vertices x steps grid", fcount);
    auto* sweep_cmd = add_experiment(app, "exp-sweep", "compare left-to-right and right-to-left sweeps", fsweep);
    auto* scatter_cmd = add_experiment(app, "exp-scatter", "initial vs locally optimized values", fscatter);
    auto* dev_cmd = add_experiment(app, "exp-dev", "relative deviation curves vs sample size", fdev);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitInput;
    }

    try {
        if (*validate_cmd)
            return cli::cmd_validate(path, std::cout, std::cerr);
        if (*bounds_cmd) {
            bopts.strategy = parse_sweep_order(bstrategy);
            if (bounds_out->count())
                bopts.out = bout;
            return cli::cmd_bounds(path, bopts, std::cout, std::cerr);
        }
        if (*oracle_cmd) {
            if (oracle_out->count())
                oopts.out = oout;
            return cli::cmd_oracle(path, oopts, std::cout, std::cerr);
        }
        if (*gen_cmd)
            return cli::cmd_gen(gopts, std::cout, std::cerr);
        if (*count_cmd)
            return cli::cmd_experiment(cli::Experiment::Count, resolve(cli::Experiment::Count, fcount), std::cout,
                                       std::cerr);
        if (*sweep_cmd)
            return cli::cmd_experiment(cli::Experiment::Sweep, resolve(cli::Experiment::Sweep, fsweep), std::cout,
                                       std::cerr);
        if (*scatter_cmd)
            return cli::cmd_experiment(cli::Experiment::Scatter, resolve(cli::Experiment::Scatter, fscatter),
                                       std::cout, std::cerr);
        if (*dev_cmd)
            return cli::cmd_experiment(cli::Experiment::Deviation, resolve(cli::Experiment::Deviation, fdev),
                                       std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitInput;
    }
    return cli::kExitInput;
}
