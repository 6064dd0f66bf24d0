#include "iwalk/chain_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iwalk {

bool MassFunction::is_pmf() const {
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= kRelTol;
}

TransitionMatrix transition_matrix(const IntervalBounds& bounds, const WeightFunction& w) {
    const std::size_t s = bounds.size();
    TransitionMatrix p{Matrix(s)};
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y)
            p.rows(x, y) = w(x, y) / bounds.marginal(x);
    return p;
}

Gamble apply_right(const IntervalBounds& bounds, const WeightFunction& w, const Gamble& f) {
    const std::size_t s = bounds.size();
    Gamble out{std::vector<double>(s, 0.0)};
    for (std::size_t x = 0; x < s; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < s; ++y)
            acc += w(x, y) * f[y];
        out[x] = acc / bounds.marginal(x);
    }
    return out;
}

MassFunction apply_left(const IntervalBounds& bounds, const MassFunction& q, const WeightFunction& w) {
    const std::size_t s = bounds.size();
    MassFunction out{std::vector<double>(s, 0.0)};
    for (std::size_t x = 0; x < s; ++x) {
        double hx = q[x] / bounds.marginal(x);
        if (hx == 0.0)
            continue;
        for (std::size_t y = 0; y < s; ++y)
            out[y] += hx * w(x, y);
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

Gamble apply_right(const IntervalBounds& bounds, const WeightVector& wvec, const Gamble& f) {
    Gamble g = f;
    for (auto it = wvec.rbegin(); it != wvec.rend(); ++it)
        g = apply_right(bounds, *it, g);
    return g;
}

MassFunction apply_left(const IntervalBounds& bounds, const MassFunction& q, const WeightVector& wvec) {
    MassFunction m = q;
    for (const auto& w : wvec)
        m = apply_left(bounds, m, w);
    return m;
}

double expectation(const IntervalBounds& bounds, const MassFunction& q, const WeightVector& wvec,
                   const Gamble& f) {
    return dot(q.values, apply_right(bounds, wvec, f).values);
}

MassFunction invariant_distribution(const IntervalBounds& bounds) {
    MassFunction pi{bounds.marginals()};
    for (double& v : pi.values)
        v /= bounds.total();
    return pi;
}

double detailed_balance_residual(const MassFunction& pi, const TransitionMatrix& p) {
    double worst = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = x + 1; y < p.size(); ++y)
            worst = std::max(worst, std::abs(pi[x] * p(x, y) - pi[y] * p(y, x)));
    return worst;
}

double detailed_balance_residual(const IntervalBounds& bounds, const WeightFunction& w) {
    return detailed_balance_residual(invariant_distribution(bounds), transition_matrix(bounds, w));
}

double sequence_lower_probability(const IntervalBounds& bounds, std::span<const std::size_t> path) {
    if (path.size() < 2)
        throw std::invalid_argument("sequence_lower_probability needs a path of at least 2 states");
    for (std::size_t x : path)
        if (x >= bounds.size())
            throw std::out_of_range("path state index " + std::to_string(x) + " out of range");

    double numerator = 1.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        std::size_t x = path[i];
        std::size_t y = path[i + 1];
        numerator *= (x == y) ? bounds.min_loop(x) : bounds.lower(x, y);
    }
    double denominator = bounds.total();
    for (std::size_t j = 1; j + 1 < path.size(); ++j)
        denominator *= bounds.marginal(path[j]);
    return numerator / denominator;
}

} // namespace iwalk
