#pragma once

// Fixtures and independent reference computations shared by the test suites.
// Nothing here calls the library's evaluation paths except to build inputs.

#include "iwalk/chain_ops.hpp"
#include "iwalk/graph_core.hpp"
#include "iwalk/local_opt.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace iwalk::testing {

// Two states, lower 0.2, upper 0.9, W = (1, 1).
inline IntervalBounds example1_bounds() {
    return IntervalBounds::create(StateSpace::numbered(2), {{0, 0.2}, {0.2, 0}}, {{0, 0.9}, {0.9, 0}}, {1, 1});
}

inline EdgeSelection sel(std::initializer_list<EdgeChoice> c) { return EdgeSelection{std::vector<EdgeChoice>(c)}; }

inline constexpr EdgeChoice L = EdgeChoice::Lower;
inline constexpr EdgeChoice U = EdgeChoice::Upper;

// w = [[0.1, 0.9], [0.9, 0.1]] (upper) and w' = [[0.8, 0.2], [0.2, 0.8]] (lower).
inline WeightFunction example1_w() { return weight_from_selection(example1_bounds(), sel({U})); }
inline WeightFunction example1_wprime() { return weight_from_selection(example1_bounds(), sel({L})); }

inline OptimizationProblem example1_problem(std::size_t steps, Sense sense) {
    return {example1_bounds(), MassFunction{{1, 0}}, Gamble{{0, 1}}, steps, sense};
}

// Hand-rolled generator of valid bounds with a mix of free, degenerate and
// absent edges. Keeps the number of free edges at or below max_free.
struct RandomBoundsGen {
    std::mt19937_64 rng;
    explicit RandomBoundsGen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) {
        return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
    std::size_t pick(std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); }

    IntervalBounds bounds(std::size_t s, std::size_t max_free = 64, bool allow_tight = true) {
        for (;;) {
            Matrix lower(s), upper(s);
            std::size_t free = 0;
            for (std::size_t x = 0; x < s; ++x)
                for (std::size_t y = x + 1; y < s; ++y) {
                    double r = uniform(0, 1);
                    if (r < 0.2)
                        continue; // absent
                    double lo = uniform(0.05, 1.0);
                    double up = lo;
                    if (r > 0.35 && free < max_free) {
                        up = lo + uniform(0.01, 1.0);
                        ++free;
                    }
                    lower(x, y) = lower(y, x) = lo;
                    upper(x, y) = upper(y, x) = up;
                }
            std::vector<double> marginal(s);
            for (std::size_t x = 0; x < s; ++x) {
                double sum = 0.0;
                for (std::size_t y = 0; y < s; ++y)
                    if (y != x)
                        sum += upper(x, y);
                bool tight = allow_tight && uniform(0, 1) < 0.15;
                marginal[x] = tight && sum > 0 ? sum : sum + uniform(0.1, 1.5);
            }
            auto b = IntervalBounds::create(StateSpace::numbered(s), lower, upper, marginal);
            if (validate(b).ok())
                return b;
        }
    }

    std::vector<double> vec(std::size_t s, double lo = -2.0, double hi = 2.0) {
        std::vector<double> v(s);
        for (auto& x : v)
            x = uniform(lo, hi);
        return v;
    }

    EdgeSelection selection(const IntervalBounds& b) {
        EdgeSelection out;
        for (std::size_t i = 0; i < b.free_edges().size(); ++i)
            out.choices.push_back(rng() & 1 ? EdgeChoice::Upper : EdgeChoice::Lower);
        return out;
    }

    // A feasible, generally non-extremal weight function.
    WeightFunction interior(const IntervalBounds& b) {
        Matrix off(b.size());
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y) {
                double v = uniform(b.lower(x, y), b.upper(x, y));
                off(x, y) = off(y, x) = v;
            }
        return WeightFunction::from_offdiag(b, off);
    }
};

// Reference evaluation: builds the product of transition matrices explicitly
// (left to right) and contracts with q and f. Independent of the library's
// right-to-left matrix-vector fold.
inline double naive_expectation(const IntervalBounds& b, const std::vector<double>& q, const WeightVector& wvec,
                                const std::vector<double>& f) {
    const std::size_t s = b.size();
    std::vector<std::vector<double>> prod(s, std::vector<double>(s, 0.0));
    for (std::size_t i = 0; i < s; ++i)
        prod[i][i] = 1.0;
    for (const auto& w : wvec) {
        std::vector<std::vector<double>> next(s, std::vector<double>(s, 0.0));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t k = 0; k < s; ++k)
                for (std::size_t j = 0; j < s; ++j)
                    next[i][j] += prod[i][k] * (w(k, j) / b.marginal(k));
        prod = std::move(next);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            total += q[i] * prod[i][j] * f[j];
    return total;
}

// Every selection of the free edges, by counting in binary.
inline std::vector<EdgeSelection> all_selections(const IntervalBounds& b) {
    const std::size_t e = b.free_edges().size();
    std::vector<EdgeSelection> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) {
        EdgeSelection s;
        for (std::size_t j = 0; j < e; ++j)
            s.choices.push_back((m >> j) & 1 ? EdgeChoice::Upper : EdgeChoice::Lower);
        out.push_back(std::move(s));
    }
    return out;
}

// Minimum over every per-step extremal selection of pi(x_1) prod P_{w_i}(x_i, x_{i+1}).
inline double enumerated_path_minimum(const IntervalBounds& b, const std::vector<std::size_t>& path) {
    auto sels = all_selections(b);
    std::vector<WeightFunction> ws;
    for (const auto& s : sels)
        ws.push_back(weight_from_selection(b, s));
    const std::size_t steps = path.size() - 1;
    std::vector<std::size_t> digit(steps, 0);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        double p = b.marginal(path[0]) / b.total();
        for (std::size_t i = 0; i < steps; ++i)
            p *= ws[digit[i]](path[i], path[i + 1]) / b.marginal(path[i]);
        best = std::min(best, p);
        std::size_t k = 0;
        while (k < steps && ++digit[k] == ws.size())
            digit[k++] = 0;
        if (k == steps)
            break;
    }
    return best;
}

inline bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

} // namespace iwalk::testing
