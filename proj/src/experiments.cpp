#include "iwalk/experiments.hpp"

#include "iwalk/parallel.hpp"
#include "iwalk/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace iwalk {

using nlohmann::json;

namespace {

// Stream tags keep the substreams of different purposes apart.
enum : std::uint64_t { kInstanceStream = 1, kStartStream = 2, kShuffleStream = 3 };

std::ofstream open_csv(const std::filesystem::path& path, const char* header) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << header << '\n';
    return out;
}

OptimizationProblem problem_for(const GeneratedInstance& inst, std::size_t steps, Sense sense) {
    return {inst.bounds, inst.q, inst.f, steps, sense};
}

// Config as recorded in summaries; the output location and thread count do
// not affect results and are left out so summaries compare byte for byte.
json config_record(const ExperimentConfig& config) {
    json doc = to_json(config);
    doc.erase("output_dir");
    doc.erase("threads");
    return doc;
}

double mean(const std::vector<double>& v) {
    if (v.empty())
        return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

std::uint64_t instance_seed(std::uint64_t seed, std::size_t vertices, std::size_t instance) {
    return derive_seed(seed, {kInstanceStream, vertices, instance});
}

std::uint64_t multistart_seed(std::uint64_t seed, std::size_t vertices, std::size_t steps, std::size_t instance,
                              Sense sense) {
    return derive_seed(seed, {kStartStream, vertices, steps, instance, sense == Sense::Min ? 0u : 1u});
}

GeneratedInstance experiment_instance(const ExperimentConfig& config, std::size_t vertices, std::size_t instance) {
    GenParams p = config.gen;
    p.vertices = vertices;
    p.seed = instance_seed(config.seed, vertices, instance);
    return generate_instance(p);
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("cannot format double");
    return std::string(buf, end);
}

std::optional<double> reference_extrema_mean(std::size_t vertices, std::size_t steps) {
    static const std::map<std::pair<std::size_t, std::size_t>, double> table{
        {{4, 2}, 1.9},   {{4, 4}, 13.4},  {{4, 6}, 80.6},  {{6, 2}, 3.2},   {{6, 4}, 46.8},
        {{6, 6}, 251.2}, {{8, 2}, 5.3},   {{8, 4}, 100.3}, {{8, 6}, 411.4},
    };
    auto it = table.find({vertices, steps});
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

// ---- local extrema counts ---------------------------------------------------

ExtremaCountResult run_extrema_count(const ExperimentConfig& config) {
    check_config(config);
    const SweepStrategy strategy{config.strategies.front()};
    ExtremaCountResult result;
    for (std::size_t v : config.vertices) {
        for (std::size_t n : config.steps) {
            std::vector<ExtremaCountRow> rows(config.instances);
            parallel_for(config.instances, config.threads, [&](std::size_t i) {
                auto inst = experiment_instance(config, v, i);
                auto lo = multistart(problem_for(inst, n, Sense::Min), config.starts,
                                     multistart_seed(config.seed, v, n, i, Sense::Min), strategy);
                auto hi = multistart(problem_for(inst, n, Sense::Max), config.starts,
                                     multistart_seed(config.seed, v, n, i, Sense::Max), strategy);
                rows[i] = {v, n, i, lo.unique_extrema.size(), hi.unique_extrema.size()};
            });
            ExtremaCountCell cell{v, n, config.instances, 0.0, 0.0};
            for (const auto& r : rows) {
                cell.mean_minima += static_cast<double>(r.unique_local_minima);
                cell.mean_maxima += static_cast<double>(r.unique_local_maxima);
            }
            cell.mean_minima /= static_cast<double>(config.instances);
            cell.mean_maxima /= static_cast<double>(config.instances);
            result.cells.push_back(cell);
            result.rows.insert(result.rows.end(), rows.begin(), rows.end());
        }
    }
    return result;
}

void write_extrema_count(const ExtremaCountResult& result, const ExperimentConfig& config,
                         const std::filesystem::path& dir) {
    {
        auto out = open_csv(dir / "extrema_count.csv",
                            "vertices,steps,instance_id,unique_local_minima,unique_local_maxima");
        for (const auto& r : result.rows)
            out << r.vertices << ',' << r.steps << ',' << r.instance_id << ',' << r.unique_local_minima << ','
                << r.unique_local_maxima << '\n';
    }
    json cells = json::array();
    {
        auto out = open_csv(dir / "extrema_count_cells.csv",
                            "vertices,steps,instances,mean_unique_local_minima,mean_unique_local_maxima,"
                            "mean_unique_local_extrema");
        for (const auto& c : result.cells) {
            out << c.vertices << ',' << c.steps << ',' << c.instances << ',' << format_double(c.mean_minima) << ','
                << format_double(c.mean_maxima) << ',' << format_double(c.mean_extrema()) << '\n';
            json cell{{"vertices", c.vertices},
                      {"steps", c.steps},
                      {"instances", c.instances},
                      {"mean_unique_local_minima", c.mean_minima},
                      {"mean_unique_local_maxima", c.mean_maxima},
                      {"mean_unique_local_extrema", c.mean_extrema()}};
            if (auto ref = reference_extrema_mean(c.vertices, c.steps))
                cell["reference_mean"] = *ref;
            cells.push_back(cell);
        }
    }
    write_json(dir / "extrema_count_summary.json",
               json{{"experiment", "extrema-count"}, {"config", config_record(config)}, {"cells", cells}});
}

// ---- sweep order comparison -------------------------------------------------

SweepComparisonResult run_sweep_comparison(const ExperimentConfig& config) {
    check_config(config);
    SweepComparisonResult result;
    std::vector<double> disagreements;
    for (std::size_t v : config.vertices) {
        for (std::size_t n : config.steps) {
            struct Slot {
                std::vector<SweepExtremumRow> extrema;
                std::vector<SweepInstanceRow> instances;
            };
            std::vector<Slot> slots(config.instances);
            parallel_for(config.instances, config.threads, [&](std::size_t i) {
                auto inst = experiment_instance(config, v, i);
                for (Sense sense : {Sense::Min, Sense::Max}) {
                    auto problem = problem_for(inst, n, sense);
                    auto seed = multistart_seed(config.seed, v, n, i, sense);
                    auto ltr = multistart(problem, config.starts, seed, {SweepOrder::LeftToRight});
                    auto rtl = multistart(problem, config.starts, seed, {SweepOrder::RightToLeft});

                    // Union of extrema, left-to-right first-hit order then the rest.
                    std::map<SelectionVector, std::size_t> ids;
                    std::vector<SweepExtremumRow> rows;
                    auto add = [&](const ExtremumRecord& e) {
                        auto [it, inserted] = ids.try_emplace(e.selections, rows.size());
                        if (inserted)
                            rows.push_back({v, n, i, sense, rows.size(), e.value, 0.0, 0.0});
                        return it->second;
                    };
                    const double total = static_cast<double>(config.starts);
                    for (const auto& e : ltr.unique_extrema)
                        rows[add(e)].freq_left_to_right = static_cast<double>(e.hits) / total;
                    for (const auto& e : rtl.unique_extrema)
                        rows[add(e)].freq_right_to_left = static_cast<double>(e.hits) / total;

                    std::size_t differ = 0;
                    for (std::size_t k = 0; k < config.starts; ++k) {
                        const auto& a = ltr.unique_extrema[ltr.runs[k].extremum].selections;
                        const auto& b = rtl.unique_extrema[rtl.runs[k].extremum].selections;
                        if (a != b)
                            ++differ;
                    }
                    slots[i].extrema.insert(slots[i].extrema.end(), rows.begin(), rows.end());
                    slots[i].instances.push_back(
                        {v, n, i, sense, static_cast<double>(differ) / total, ltr.best.value, rtl.best.value});
                }
            });
            for (auto& s : slots) {
                result.extrema.insert(result.extrema.end(), s.extrema.begin(), s.extrema.end());
                for (const auto& r : s.instances) {
                    disagreements.push_back(r.disagreement_fraction);
                    result.instances.push_back(r);
                }
            }
        }
    }
    result.mean_disagreement = mean(disagreements);
    return result;
}

void write_sweep_comparison(const SweepComparisonResult& result, const ExperimentConfig& config,
                            const std::filesystem::path& dir) {
    {
        auto out = open_csv(dir / "sweep_comparison.csv",
                            "vertices,steps,instance_id,sense,extremum_id,value,freq_left_to_right,"
                            "freq_right_to_left");
        for (const auto& r : result.extrema)
            out << r.vertices << ',' << r.steps << ',' << r.instance_id << ',' << to_string(r.sense) << ','
                << r.extremum_id << ',' << format_double(r.value) << ',' << format_double(r.freq_left_to_right)
                << ',' << format_double(r.freq_right_to_left) << '\n';
    }
    {
        auto out = open_csv(dir / "sweep_disagreement.csv",
                            "vertices,steps,instance_id,sense,disagreement_fraction,best_left_to_right,"
                            "best_right_to_left");
        for (const auto& r : result.instances)
            out << r.vertices << ',' << r.steps << ',' << r.instance_id << ',' << to_string(r.sense) << ','
                << format_double(r.disagreement_fraction) << ',' << format_double(r.best_left_to_right) << ','
                << format_double(r.best_right_to_left) << '\n';
    }
    write_json(dir / "sweep_comparison_summary.json", json{{"experiment", "sweep-comparison"},
                                                           {"config", config_record(config)},
                                                           {"mean_disagreement_fraction", result.mean_disagreement}});
}

// ---- initial vs optimized values -------------------------------------------

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return sab / std::sqrt(saa * sbb);
}

ScatterResult run_initial_vs_optimized(const ExperimentConfig& config) {
    check_config(config);
    const SweepStrategy strategy{config.strategies.front()};
    ScatterResult result;
    std::vector<double> all_start, all_opt, per_instance;
    for (std::size_t v : config.vertices) {
        for (std::size_t n : config.steps) {
            std::vector<std::vector<ScatterRow>> slots(config.instances);
            parallel_for(config.instances, config.threads, [&](std::size_t i) {
                auto inst = experiment_instance(config, v, i);
                auto report = multistart(problem_for(inst, n, config.sense), config.starts,
                                         multistart_seed(config.seed, v, n, i, config.sense), strategy);
                for (std::size_t k = 0; k < report.runs.size(); ++k)
                    slots[i].push_back({v, n, i, k, report.runs[k].start_value, report.runs[k].value});
            });
            for (const auto& rows : slots) {
                std::vector<double> s, o;
                for (const auto& r : rows) {
                    s.push_back(r.start_value);
                    o.push_back(r.optimized_value);
                    result.rows.push_back(r);
                }
                all_start.insert(all_start.end(), s.begin(), s.end());
                all_opt.insert(all_opt.end(), o.begin(), o.end());
                double c = pearson(s, o);
                if (!std::isnan(c))
                    per_instance.push_back(c);
            }
        }
    }
    result.pooled_correlation = pearson(all_start, all_opt);
    result.mean_instance_correlation = mean(per_instance);
    result.correlated_instances = per_instance.size();
    return result;
}

void write_initial_vs_optimized(const ScatterResult& result, const ExperimentConfig& config,
                                const std::filesystem::path& dir) {
    {
        auto out = open_csv(dir / "initial_vs_optimized.csv",
                            "vertices,steps,instance_id,start_index,start_value,optimized_value");
        for (const auto& r : result.rows)
            out << r.vertices << ',' << r.steps << ',' << r.instance_id << ',' << r.start_index << ','
                << format_double(r.start_value) << ',' << format_double(r.optimized_value) << '\n';
    }
    auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    write_json(dir / "initial_vs_optimized_summary.json",
               json{{"experiment", "initial-vs-optimized"},
                    {"config", config_record(config)},
                    {"pooled_correlation", num(result.pooled_correlation)},
                    {"mean_instance_correlation", num(result.mean_instance_correlation)},
                    {"correlated_instances", result.correlated_instances}});
}

// ---- deviation curves ---------------------------------------------------------

double relative_deviation(double value, double best, Sense sense) {
    if (!(best > 0.0))
        throw std::invalid_argument("relative deviation needs a positive best value");
    double gap = sense == Sense::Min ? value - best : best - value;
    return 100.0 * gap / best;
}

DeviationResult run_deviation_curves(const ExperimentConfig& config) {
    check_config(config);
    const SweepStrategy strategy{config.strategies.front()};
    const Sense sense = config.sense;
    DeviationResult result;
    for (std::size_t v : config.vertices) {
        for (std::size_t n : config.steps) {
            // Per instance: deviation of the running best after k starts.
            std::vector<std::vector<double>> dev_opt(config.instances), dev_rnd(config.instances);
            parallel_for(config.instances, config.threads, [&](std::size_t i) {
                auto inst = experiment_instance(config, v, i);
                for (std::size_t x = 0; x < inst.q.size(); ++x)
                    if (inst.q[x] < 0.0 || inst.f[x] < 0.0)
                        throw std::invalid_argument("deviation curves need nonnegative q and f");
                auto report = multistart(problem_for(inst, n, sense), config.starts,
                                         multistart_seed(config.seed, v, n, i, sense), strategy);
                Rng rng(derive_seed(config.seed, {kShuffleStream, v, n, i}));
                auto order = rng.permutation(config.starts);

                const double best = report.best.value;
                const bool min = sense == Sense::Min;
                double run_opt = min ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
                double run_rnd = run_opt;
                dev_opt[i].reserve(config.starts);
                dev_rnd[i].reserve(config.starts);
                for (std::size_t k : order) {
                    const auto& r = report.runs[k];
                    run_opt = min ? std::min(run_opt, r.value) : std::max(run_opt, r.value);
                    run_rnd = min ? std::min(run_rnd, r.start_value) : std::max(run_rnd, r.start_value);
                    dev_opt[i].push_back(relative_deviation(run_opt, best, sense));
                    dev_rnd[i].push_back(relative_deviation(run_rnd, best, sense));
                }
            });
            for (std::size_t k = 0; k < config.starts; ++k) {
                DeviationRow row{v, n, k + 1, 0.0, 0.0, 0.0, 0.0};
                for (std::size_t i = 0; i < config.instances; ++i) {
                    row.avg_rel_dev_optimized += dev_opt[i][k];
                    row.avg_rel_dev_random += dev_rnd[i][k];
                    row.max_rel_dev_optimized = std::max(row.max_rel_dev_optimized, dev_opt[i][k]);
                    row.max_rel_dev_random = std::max(row.max_rel_dev_random, dev_rnd[i][k]);
                }
                row.avg_rel_dev_optimized /= static_cast<double>(config.instances);
                row.avg_rel_dev_random /= static_cast<double>(config.instances);
                result.rows.push_back(row);
            }
        }
    }
    return result;
}

void write_deviation_curves(const DeviationResult& result, const ExperimentConfig& config,
                            const std::filesystem::path& dir) {
    {
        auto out = open_csv(dir / "deviation_curves.csv",
                            "vertices,steps,sample_size,avg_rel_dev_optimized,avg_rel_dev_random,"
                            "max_rel_dev_optimized,max_rel_dev_random");
        for (const auto& r : result.rows)
            out << r.vertices << ',' << r.steps << ',' << r.sample_size << ',' << format_double(r.avg_rel_dev_optimized)
                << ',' << format_double(r.avg_rel_dev_random) << ',' << format_double(r.max_rel_dev_optimized) << ','
                << format_double(r.max_rel_dev_random) << '\n';
    }
    json last = json::array();
    for (const auto& r : result.rows)
        if (r.sample_size == config.starts)
            last.push_back({{"vertices", r.vertices},
                            {"steps", r.steps},
                            {"avg_rel_dev_random", r.avg_rel_dev_random},
                            {"max_rel_dev_random", r.max_rel_dev_random}});
    write_json(dir / "deviation_curves_summary.json",
               json{{"experiment", "deviation-curves"}, {"config", config_record(config)}, {"full_budget", last}});
}

} // namespace iwalk
