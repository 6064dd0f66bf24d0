#pragma once

// Experiment runners. Each returns its rows in memory and has a matching
// writer that emits plot-ready CSV (header row first, '.' decimals) plus a
// JSON summary. All randomness comes from substreams of the config seed, so
// output is independent of the thread count.
//
// CSV schemas:
//   extrema_count.csv        vertices,steps,instance_id,unique_local_minima,unique_local_maxima
//   extrema_count_cells.csv  vertices,steps,instances,mean_unique_local_minima,mean_unique_local_maxima,
//                            mean_unique_local_extrema
//   sweep_comparison.csv     vertices,steps,instance_id,sense,extremum_id,value,freq_left_to_right,
//                            freq_right_to_left
//   sweep_disagreement.csv   vertices,steps,instance_id,sense,disagreement_fraction,best_left_to_right,
//                            best_right_to_left
//   initial_vs_optimized.csv vertices,steps,instance_id,start_index,start_value,optimized_value
//   deviation_curves.csv     vertices,steps,sample_size,avg_rel_dev_optimized,avg_rel_dev_random,
//                            max_rel_dev_optimized,max_rel_dev_random

#include "iwalk/instance_io.hpp"
#include "iwalk/local_opt.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace iwalk {

// Seeds shared by all runners: the instance depends only on (seed, vertices,
// instance), so the same graphs appear across step counts.
std::uint64_t instance_seed(std::uint64_t seed, std::size_t vertices, std::size_t instance);
std::uint64_t multistart_seed(std::uint64_t seed, std::size_t vertices, std::size_t steps, std::size_t instance,
                              Sense sense);

GeneratedInstance experiment_instance(const ExperimentConfig& config, std::size_t vertices, std::size_t instance);

std::string format_double(double v);

// Average local-extrema counts reported for the original experiments
// (vertices x steps); nullopt outside the 4/6/8 x 2/4/6 grid.
std::optional<double> reference_extrema_mean(std::size_t vertices, std::size_t steps);

// ---- local extrema counts ---------------------------------------------------

struct ExtremaCountRow {
    std::size_t vertices = 0;
    std::size_t steps = 0;
    std::size_t instance_id = 0;
    std::size_t unique_local_minima = 0;
    std::size_t unique_local_maxima = 0;
};

struct ExtremaCountCell {
    std::size_t vertices = 0;
    std::size_t steps = 0;
    std::size_t instances = 0;
    double mean_minima = 0.0;
    double mean_maxima = 0.0;
    double mean_extrema() const { return mean_minima + mean_maxima; }
};

struct ExtremaCountResult {
    std::vector<ExtremaCountRow> rows;
    std::vector<ExtremaCountCell> cells; // grid order: vertices outer, steps inner
};

ExtremaCountResult run_extrema_count(const ExperimentConfig& config);
void write_extrema_count(const ExtremaCountResult& result, const ExperimentConfig& config,
                         const std::filesystem::path& dir);

// ---- sweep order comparison -------------------------------------------------

struct SweepExtremumRow {
    std::size_t vertices = 0;
    std::size_t steps = 0;
    std::size_t instance_id = 0;
    Sense sense = Sense::Min;
    std::size_t extremum_id = 0;
    double value = 0.0;
    double freq_left_to_right = 0.0;
    double freq_right_to_left = 0.0;
};

struct SweepInstanceRow {
    std::size_t vertices = 0;
    std::size_t steps = 0;
    std::size_t instance_id = 0;
    Sense sense = Sense::Min;
    double disagreement_fraction = 0.0; // starts whose two orders end at different extrema
    double best_left_to_right = 0.0;
    double best_right_to_left = 0.0;
};

struct SweepComparisonResult {
    std::vector<SweepExtremumRow> extrema;
    std::vector<SweepInstanceRow> instances;
    double mean_disagreement = 0.0;
};

SweepComparisonResult run_sweep_comparison(const ExperimentConfig& config);
void write_sweep_comparison(const SweepComparisonResult& result, const ExperimentConfig& config,
                            const std::filesystem::path& dir);

// ---- initial vs optimized values -------------------------------------------

struct ScatterRow {
    std::size_t vertices = 0;
    std::size_t steps = 0;
    std::size_t instance_id = 0;
    std::size_t start_index = 0;
    double start_value = 0.0;
    double optimized_value = 0.0;
};

struct ScatterResult {
    std::vector<ScatterRow> rows;
    double pooled_correlation = 0.0;
    // Mean of per-instance correlations (instances with constant values skipped).
    double mean_instance_correlation = 0.0;
    std::size_t correlated_instances = 0;
};

// Pearson correlation; NaN when either side has zero variance.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

ScatterResult run_initial_vs_optimized(const ExperimentConfig& config);
void write_initial_vs_optimized(const ScatterResult& result, const ExperimentConfig& config,
                                const std::filesystem::path& dir);

// ---- deviation curves ---------------------------------------------------------

struct DeviationRow {
    std::size_t vertices = 0;
    std::size_t steps = 0;
    std::size_t sample_size = 0;
    double avg_rel_dev_optimized = 0.0;
    double avg_rel_dev_random = 0.0;
    double max_rel_dev_optimized = 0.0;
    double max_rel_dev_random = 0.0;
};

struct DeviationResult {
    std::vector<DeviationRow> rows;
};

// Relative deviation (percent) of `value` from `best` in the given sense.
// Requires best > 0.
double relative_deviation(double value, double best, Sense sense);

DeviationResult run_deviation_curves(const ExperimentConfig& config);
void write_deviation_curves(const DeviationResult& result, const ExperimentConfig& config,
                            const std::filesystem::path& dir);

} // namespace iwalk
