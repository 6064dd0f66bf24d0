#pragma once

// Exact bounds by exhaustive enumeration.
//
// Optima over the feasible set are attained at extremal weight vectors, so
// enumerating all 2^e selections per step (e = number of free edges) gives
// the global minimum and maximum. Only usable on small instances; both entry
// points refuse rather than truncate when the instance is too large.

#include "iwalk/chain_ops.hpp"
#include "iwalk/graph_core.hpp"
#include "iwalk/local_opt.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace iwalk {

class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEdgeCap = 20;
inline constexpr std::uint64_t kDefaultEvaluationBudget = std::uint64_t{1} << 24;

struct ExtremalCandidate {
    EdgeSelection selection;
    WeightFunction weight;
};

// All 2^e extremal weight functions in lexicographic selection order
// (first free edge most significant, LOWER before UPPER).
std::vector<ExtremalCandidate> enumerate_extremal(const IntervalBounds& bounds, std::size_t edge_cap = kDefaultEdgeCap);

// Selection number `index` in that order.
EdgeSelection selection_at(std::size_t edges, std::uint64_t index);

// Every extremal start vector of length `steps`, lexicographic.
std::vector<SelectionVector> enumerate_extremal_vectors(const IntervalBounds& bounds, std::size_t steps,
                                                        std::uint64_t budget = kDefaultEvaluationBudget);

struct ExactBounds {
    double min = 0.0;
    double max = 0.0;
    std::vector<SelectionVector> argmin; // all vectors within 1e-12 of min, lexicographic
    std::vector<SelectionVector> argmax;
    std::uint64_t evaluations = 0;
};

inline constexpr double kArgTol = 1e-12;

ExactBounds exact_bounds(const IntervalBounds& bounds, const MassFunction& q, const Gamble& f, std::size_t steps,
                         std::uint64_t budget = kDefaultEvaluationBudget);

// Number of weight vectors exact_bounds would evaluate, saturating at
// UINT64_MAX.
std::uint64_t enumeration_size(const IntervalBounds& bounds, std::size_t steps);

} // namespace iwalk
