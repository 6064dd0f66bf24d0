#pragma once

// Random test instances: sparse interval-weighted graphs with exponential
// weights, plus exponential q and f.

#include "iwalk/chain_ops.hpp"
#include "iwalk/graph_core.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace iwalk {

struct GenParams {
    std::size_t vertices = 4;
    double disconnect_fraction = 0.25; // probability that a pair has no edge
    double lower_mean = 0.8;
    double width_mean = 1.0;           // upper = lower * (1 + Exp(width_mean))
    double qf_mean = 1.5;
    double marginal_slack = 0.1;       // W(x) = (1 + slack) * sum of upper bounds
    std::uint64_t seed = 0;
    std::size_t connect_retries = 1000;
};

// Throws std::invalid_argument when a field is out of range.
void check_params(const GenParams& params);

struct GeneratedInstance {
    IntervalBounds bounds;
    MassFunction q;
    Gamble f;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deterministic in params. Throws GenerationError if no connected edge set
// was drawn within connect_retries attempts.
GeneratedInstance generate_instance(const GenParams& params);

} // namespace iwalk
