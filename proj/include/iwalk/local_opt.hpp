#pragma once

// Local search over extremal weight vectors.
//
// For a split index k the objective <q, T_{w_1}...T_{w_n} f> is linear in
// w_k, with left factor q T_{w_1..w_{k-1}} and right factor
// T_{w_{k+1}..w_n} f. The minimising w_k is the extremal weight for that
// pair, so the search repeatedly replaces single steps until no split index
// gives a strict improvement. Maximisation runs the same search on -f.

#include "iwalk/chain_ops.hpp"
#include "iwalk/graph_core.hpp"
#include "iwalk/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace iwalk {

enum class Sense { Min, Max };
enum class SweepOrder { LeftToRight, RightToLeft };

std::string to_string(Sense sense);
std::string to_string(SweepOrder order);
Sense parse_sense(const std::string& text);
SweepOrder parse_sweep_order(const std::string& text);

struct SweepStrategy {
    SweepOrder order = SweepOrder::LeftToRight;
};

struct OptimizationProblem {
    IntervalBounds bounds;
    MassFunction q;
    Gamble f;
    std::size_t steps = 1;
    Sense sense = Sense::Min;
};

// Throws std::invalid_argument if steps == 0 or q/f do not match the bounds.
void check_problem(const OptimizationProblem& problem);

using SelectionVector = std::vector<EdgeSelection>;

WeightVector weights_from_selections(const IntervalBounds& bounds, const SelectionVector& sels);

// Objective value of a weight vector, in the problem's own sense.
double objective(const OptimizationProblem& problem, const WeightVector& wvec);

struct Improvement {
    WeightFunction weight;
    EdgeSelection selection;
    double value = 0.0; // objective with step k replaced
};

// Best replacement for step k (0-based) with all other steps held fixed.
// Throws std::out_of_range for k >= wvec.size().
Improvement improve_at(const OptimizationProblem& problem, const WeightVector& wvec, std::size_t k);

// Largest objective gain any single improve_at call could still make
// (positive means "not a fixed point"). Naive recomputation, used as a
// certificate.
double max_single_step_gain(const OptimizationProblem& problem, const WeightVector& wvec);

struct LocalOptimum {
    SelectionVector selections;
    WeightVector weights;
    double value = 0.0;
    double start_value = 0.0;
    std::size_t sweeps = 0;
    std::size_t improvements = 0;
    // Objective after each accepted replacement, starting with start_value.
    std::vector<double> trace;
};

inline constexpr double kDefaultImprovementTol = 1e-12;

// Accepts a replacement only if it improves the objective by more than
// tol * max(1, |value|). A step that is not extremal is also replaced when
// the extremal candidate is no worse, so every returned step is extremal.
LocalOptimum local_optimize(const OptimizationProblem& problem, const WeightVector& start,
                            SweepStrategy strategy = {}, double tol = kDefaultImprovementTol);

// Extremal selection from a pair of independent random state rankings.
EdgeSelection random_extremal_selection(const IntervalBounds& bounds, Rng& rng);

SelectionVector random_extremal_selections(const IntervalBounds& bounds, std::size_t steps,
                                           std::uint64_t seed);
WeightVector random_extremal_vector(const IntervalBounds& bounds, std::size_t steps, std::uint64_t seed);

// Seed used for start `index` of a multistart run.
std::uint64_t start_seed(std::uint64_t seed, std::size_t index);

struct ExtremumRecord {
    SelectionVector selections;
    double value = 0.0;
    std::size_t hits = 0;
    std::size_t first_start = 0;
};

struct RunRecord {
    double start_value = 0.0;
    double value = 0.0;
    std::size_t extremum = 0; // index into unique_extrema
    std::size_t sweeps = 0;
    std::size_t improvements = 0;
};

struct MultistartReport {
    LocalOptimum best;
    std::vector<ExtremumRecord> unique_extrema; // ordered by first hit
    std::vector<RunRecord> runs;                // one per start, in start order
    std::size_t starts = 0;
    std::uint64_t seed = 0;

    // Distinct extremum values after clustering at `abs_tol`, ascending.
    std::vector<double> unique_values(double abs_tol = 1e-9) const;
};

MultistartReport multistart(const OptimizationProblem& problem, std::size_t starts, std::uint64_t seed,
                            SweepStrategy strategy = {}, std::size_t threads = 1);

// Same bookkeeping, from caller-provided start vectors.
MultistartReport multistart_from(const OptimizationProblem& problem, const std::vector<SelectionVector>& starts,
                                 SweepStrategy strategy = {}, std::size_t threads = 1);

} // namespace iwalk
