#include "iwalk/cli.hpp"

#include "iwalk/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

namespace iwalk::cli {

using nlohmann::json;

namespace {

// Console output only; files keep full round-trip precision.
std::string show(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json schedule_json(const SelectionVector& sels) {
    json arr = json::array();
    for (const auto& s : sels)
        arr.push_back(to_string(s));
    return arr;
}

std::string schedule_text(const SelectionVector& sels) {
    std::string out;
    for (std::size_t k = 0; k < sels.size(); ++k) {
        if (k)
            out += ' ';
        out += sels[k].choices.empty() ? "-" : to_string(sels[k]);
    }
    return out;
}

std::string join_values(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ", ";
        out += show(values[i]);
    }
    return out;
}

void print_report(const ValidationReport& report, const StateSpace& states, std::ostream& out) {
    if (report.ok())
        out << "valid\n";
    for (const auto& v : report.violations) {
        out << to_string(v.code) << " at ";
        if (v.y)
            out << "{" << states.label(v.x) << "," << states.label(*v.y) << "}";
        else
            out << states.label(v.x);
        out << ": " << v.message << "\n";
    }
    for (const auto& w : report.warnings)
        out << "WARNING: " << w << "\n";
}

// Loads and validates an instance. Returns an exit code on failure.
std::optional<int> load(const std::string& path, InstanceFile& inst, IntervalBounds& bounds, std::ostream& out,
                        std::ostream& err) {
    try {
        inst = read_instance(path);
        bounds = bounds_of(inst);
    } catch (const std::exception& e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return kExitInput;
    }
    auto report = validate(bounds);
    if (!report.ok()) {
        print_report(report, bounds.states(), out);
        return kExitInvalid;
    }
    return std::nullopt;
}

json extrema_json(const MultistartReport& r) {
    json list = json::array();
    for (const auto& e : r.unique_extrema)
        list.push_back({{"value", e.value}, {"hits", e.hits}, {"schedule", schedule_json(e.selections)}});
    return json{{"best", r.best.value},
                {"schedule", schedule_json(r.best.selections)},
                {"unique_values", r.unique_values()},
                {"unique_extrema", list}};
}

} // namespace

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    InstanceFile inst;
    IntervalBounds bounds;
    try {
        inst = read_instance(path);
        bounds = bounds_of(inst);
    } catch (const std::exception& e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return kExitInput;
    }
    auto report = validate(bounds);
    print_report(report, bounds.states(), out);
    return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_bounds(const std::string& path, const BoundsOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<Sense> senses;
    if (opts.sense == "min" || opts.sense == "both")
        senses.push_back(Sense::Min);
    if (opts.sense == "max" || opts.sense == "both")
        senses.push_back(Sense::Max);
    if (senses.empty()) {
        err << "error: --sense must be min, max or both\n";
        return kExitInput;
    }
    if (opts.starts == 0) {
        err << "error: --starts must be at least 1\n";
        return kExitInput;
    }
    InstanceFile inst;
    IntervalBounds bounds;
    if (auto code = load(path, inst, bounds, out, err))
        return *code;
    if (inst.steps == 0) {
        err << "error: instance must have at least one step\n";
        return kExitInvalid;
    }

    json record{{"command", "bounds"},
                {"instance", std::filesystem::path(path).filename().string()},
                {"steps", inst.steps},
                {"starts", opts.starts},
                {"seed", opts.seed},
                {"strategy", to_string(opts.strategy)}};
    out << "steps " << inst.steps << ", " << opts.starts << " starts, seed " << opts.seed << ", "
        << to_string(opts.strategy) << "\n";
    for (Sense sense : senses) {
        auto problem = problem_of(inst, sense);
        auto report = multistart(problem, opts.starts, opts.seed, {opts.strategy}, opts.threads);
        const char* name = sense == Sense::Min ? "lower" : "upper";
        out << name << " bound: " << show(report.best.value) << "\n";
        out << "  unique local " << (sense == Sense::Min ? "minima" : "maxima") << ": "
            << report.unique_extrema.size() << " (values: " << join_values(report.unique_values()) << ")\n";
        out << "  schedule: " << schedule_text(report.best.selections) << "\n";
        std::vector<const ExtremumRecord*> sorted;
        for (const auto& e : report.unique_extrema)
            sorted.push_back(&e);
        std::stable_sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) {
            return sense == Sense::Min ? a->value < b->value : a->value > b->value;
        });
        for (const auto* e : sorted)
            out << "    " << show(e->value) << "  hits " << e->hits << "  [" << schedule_text(e->selections)
                << "]\n";
        record[to_string(sense)] = extrema_json(report);
    }
    if (opts.out) {
        try {
            write_json(*opts.out, record);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
    }
    return kExitOk;
}

int cmd_oracle(const std::string& path, const OracleOptions& opts, std::ostream& out, std::ostream& err) {
    InstanceFile inst;
    IntervalBounds bounds;
    if (auto code = load(path, inst, bounds, out, err))
        return *code;
    ExactBounds exact;
    try {
        exact = exact_bounds(bounds, MassFunction{inst.q}, Gamble{inst.f}, inst.steps, opts.budget);
    } catch (const OracleRefusal& e) {
        out << "refused: " << e.what() << "\n";
        return kExitInvalid;
    }
    out << "exact lower bound: " << show(exact.min) << " (" << exact.argmin.size() << " minimizers)\n";
    out << "exact upper bound: " << show(exact.max) << " (" << exact.argmax.size() << " maximizers)\n";
    out << "evaluated " << exact.evaluations << " extremal weight vectors\n";
    if (opts.out) {
        json argmin = json::array(), argmax = json::array();
        for (const auto& v : exact.argmin)
            argmin.push_back(schedule_json(v));
        for (const auto& v : exact.argmax)
            argmax.push_back(schedule_json(v));
        try {
            write_json(*opts.out, json{{"command", "oracle"},
                                       {"steps", inst.steps},
                                       {"min", exact.min},
                                       {"max", exact.max},
                                       {"argmin", argmin},
                                       {"argmax", argmax},
                                       {"evaluations", exact.evaluations}});
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
    }
    return kExitOk;
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.out.empty()) {
        err << "error: --out is required\n";
        return kExitInput;
    }
    GeneratedInstance gen;
    try {
        gen = generate_instance(opts.params);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    try {
        write_instance(opts.out, instance_of(gen, opts.steps));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const auto& b = gen.bounds;
    std::size_t pairs = 0, edges = 0;
    double lower_sum = 0.0;
    for (std::size_t x = 0; x < b.size(); ++x)
        for (std::size_t y = x + 1; y < b.size(); ++y) {
            ++pairs;
            if (b.upper(x, y) > 0.0) {
                ++edges;
                lower_sum += b.lower(x, y);
            }
        }
    out << "wrote " << opts.out << "\n";
    out << "vertices " << b.size() << ", edges " << edges << " of " << pairs << " pairs (absent fraction "
        << show(static_cast<double>(pairs - edges) / static_cast<double>(pairs)) << ")\n";
    out << "mean lower weight " << show(edges ? lower_sum / static_cast<double>(edges) : 0.0)
        << ", free edges " << b.free_edges().size() << ", steps " << opts.steps << "\n";
    return kExitOk;
}

ExperimentConfig default_config(Experiment kind) {
    ExperimentConfig c;
    switch (kind) {
    case Experiment::Count:
        break;
    case Experiment::Sweep:
        c.instances = 20;
        break;
    case Experiment::Scatter:
        c.vertices = {6};
        c.steps = {4};
        c.instances = 10;
        c.sense = Sense::Max;
        break;
    case Experiment::Deviation:
        c.vertices = {8};
        c.steps = {8};
        c.instances = 30;
        c.starts = 500;
        break;
    }
    return c;
}

int cmd_experiment(Experiment kind, const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        check_config(config);
        const std::filesystem::path dir = config.output_dir;
        switch (kind) {
        case Experiment::Count: {
            auto r = run_extrema_count(config);
            write_extrema_count(r, config, dir);
            out << "vertices,steps,mean_unique_local_minima,mean_unique_local_maxima,reference_mean\n";
            for (const auto& c : r.cells) {
                auto ref = reference_extrema_mean(c.vertices, c.steps);
                out << c.vertices << ',' << c.steps << ',' << show(c.mean_minima) << ','
                    << show(c.mean_maxima) << ',' << (ref ? show(*ref) : "") << "\n";
            }
            break;
        }
        case Experiment::Sweep: {
            auto r = run_sweep_comparison(config);
            write_sweep_comparison(r, config, dir);
            out << "mean fraction of starts where the two sweep orders disagree: "
                << show(r.mean_disagreement) << "\n";
            break;
        }
        case Experiment::Scatter: {
            auto r = run_initial_vs_optimized(config);
            write_initial_vs_optimized(r, config, dir);
            out << "pooled correlation(start, optimized): " << show(r.pooled_correlation) << "\n";
            out << "mean per-instance correlation: " << show(r.mean_instance_correlation) << " over "
                << r.correlated_instances << " instances\n";
            break;
        }
        case Experiment::Deviation: {
            auto r = run_deviation_curves(config);
            write_deviation_curves(r, config, dir);
            for (const auto& row : r.rows)
                if (row.sample_size == 1 || row.sample_size == config.starts ||
                    (row.sample_size & (row.sample_size - 1)) == 0)
                    out << "n=" << row.steps << " s=" << row.vertices << " sample " << row.sample_size
                        << ": avg dev optimized " << show(row.avg_rel_dev_optimized) << "%, random "
                        << show(row.avg_rel_dev_random) << "%\n";
            break;
        }
        }
        out << "outputs in " << dir.string() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

} // namespace iwalk::cli
