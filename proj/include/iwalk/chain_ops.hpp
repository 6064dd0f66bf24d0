#pragma once

// Transition operators induced by weight functions.
//
// P_w(x, y) = w(x, y) / W(x). T_w acts on gambles from the left (T_w f) and
// on mass functions from the right (q T_w). Because the weights are
// symmetric, pi(x) = W(x) / W is invariant for every feasible w.

#include "iwalk/graph_core.hpp"

#include <span>
#include <vector>

namespace iwalk {

// State-indexed mass (a pmf, or any signed mass when used as a left vector).
struct MassFunction {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    operator std::span<const double>() const { return values; }

    // Nonnegative and summing to 1 within kRelTol.
    bool is_pmf() const;
};

// State-indexed real function whose expectation is bounded.
struct Gamble {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    operator std::span<const double>() const { return values; }
};

struct TransitionMatrix {
    Matrix rows;

    double operator()(std::size_t x, std::size_t y) const { return rows(x, y); }
    std::size_t size() const { return rows.size(); }
};

// One weight function per time step.
using WeightVector = std::vector<WeightFunction>;

TransitionMatrix transition_matrix(const IntervalBounds& bounds, const WeightFunction& w);

// (T_w f)(x) = sum_y P_w(x, y) f(y)
Gamble apply_right(const IntervalBounds& bounds, const WeightFunction& w, const Gamble& f);

// (q T_w)(y) = sum_x q(x) P_w(x, y)
MassFunction apply_left(const IntervalBounds& bounds, const MassFunction& q, const WeightFunction& w);

double dot(std::span<const double> a, std::span<const double> b);

// <q, T_{w_1} ... T_{w_n} f>, folded right to left. An empty vector gives <q, f>.
double expectation(const IntervalBounds& bounds, const MassFunction& q, const WeightVector& wvec,
                   const Gamble& f);

// T_{w_1} ... T_{w_n} f
Gamble apply_right(const IntervalBounds& bounds, const WeightVector& wvec, const Gamble& f);

// q T_{w_1} ... T_{w_n}
MassFunction apply_left(const IntervalBounds& bounds, const MassFunction& q, const WeightVector& wvec);

MassFunction invariant_distribution(const IntervalBounds& bounds);

// max |pi(x) P(x, y) - pi(y) P(y, x)|
double detailed_balance_residual(const IntervalBounds& bounds, const WeightFunction& w);
double detailed_balance_residual(const MassFunction& pi, const TransitionMatrix& p);

// Lower probability of observing the state sequence `path` when the chain
// starts in pi. Loop steps use the smallest attainable loop weight.
// Throws std::invalid_argument for paths with fewer than two states.
double sequence_lower_probability(const IntervalBounds& bounds, std::span<const std::size_t> path);

} // namespace iwalk
