#include "iwalk/local_opt.hpp"

#include "iwalk/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace iwalk {

namespace {

double sense_sign(Sense sense) { return sense == Sense::Min ? 1.0 : -1.0; }

// The gamble that is minimised: f for MIN, -f for MAX.
Gamble minimised_gamble(const OptimizationProblem& problem) {
    Gamble g = problem.f;
    if (problem.sense == Sense::Max)
        for (double& v : g.values)
            v = -v;
    return g;
}

bool improves(double current, double candidate, double tol) {
    return current - candidate > tol * std::max(1.0, std::abs(current));
}

} // namespace

std::string to_string(Sense sense) { return sense == Sense::Min ? "min" : "max"; }

std::string to_string(SweepOrder order) {
    return order == SweepOrder::LeftToRight ? "left-to-right" : "right-to-left";
}

Sense parse_sense(const std::string& text) {
    if (text == "min")
        return Sense::Min;
    if (text == "max")
        return Sense::Max;
    throw std::invalid_argument("unknown sense '" + text + "' (expected min or max)");
}

SweepOrder parse_sweep_order(const std::string& text) {
    if (text == "left-to-right" || text == "ltr")
        return SweepOrder::LeftToRight;
    if (text == "right-to-left" || text == "rtl")
        return SweepOrder::RightToLeft;
    throw std::invalid_argument("unknown sweep strategy '" + text + "' (expected left-to-right or right-to-left)");
}

void check_problem(const OptimizationProblem& problem) {
    if (problem.steps == 0)
        throw std::invalid_argument("optimization problem needs at least one step");
    if (problem.q.size() != problem.bounds.size() || problem.f.size() != problem.bounds.size())
        throw std::invalid_argument("q and f must have one entry per state");
}

WeightVector weights_from_selections(const IntervalBounds& bounds, const SelectionVector& sels) {
    WeightVector out;
    out.reserve(sels.size());
    for (const auto& sel : sels)
        out.push_back(weight_from_selection(bounds, sel));
    return out;
}

double objective(const OptimizationProblem& problem, const WeightVector& wvec) {
    return expectation(problem.bounds, problem.q, wvec, problem.f);
}

Improvement improve_at(const OptimizationProblem& problem, const WeightVector& wvec, std::size_t k) {
    if (k >= wvec.size())
        throw std::out_of_range("split index " + std::to_string(k) + " out of range for " +
                                std::to_string(wvec.size()) + " steps");
    const auto& b = problem.bounds;
    MassFunction left = problem.q;
    for (std::size_t i = 0; i < k; ++i)
        left = apply_left(b, left, wvec[i]);
    Gamble right = minimised_gamble(problem);
    for (std::size_t i = wvec.size(); i-- > k + 1;)
        right = apply_right(b, wvec[i], right);

    auto ext = extremal_weight(b, left, right);
    double value = dot(left.values, apply_right(b, ext.weight, right).values) * sense_sign(problem.sense);
    return {std::move(ext.weight), std::move(ext.selection), value};
}

double max_single_step_gain(const OptimizationProblem& problem, const WeightVector& wvec) {
    const double sign = sense_sign(problem.sense);
    const double current = objective(problem, wvec) * sign;
    double gain = 0.0;
    for (std::size_t k = 0; k < wvec.size(); ++k)
        gain = std::max(gain, current - improve_at(problem, wvec, k).value * sign);
    return gain;
}

LocalOptimum local_optimize(const OptimizationProblem& problem, const WeightVector& start, SweepStrategy strategy,
                            double tol) {
    check_problem(problem);
    const auto& b = problem.bounds;
    const std::size_t n = start.size();
    const double sign = sense_sign(problem.sense);
    const Gamble g = minimised_gamble(problem);

    LocalOptimum out;
    out.weights = start;
    std::vector<std::optional<EdgeSelection>> current(n);
    for (std::size_t k = 0; k < n; ++k)
        current[k] = selection_of(b, start[k]);

    // Internally everything is minimised; `value` is <q, T_w g>.
    double value = expectation(b, problem.q, out.weights, g);
    out.start_value = value * sign;
    out.trace.push_back(out.start_value);

    // Try to replace step k given its left mass and right gamble.
    auto visit = [&](std::size_t k, const MassFunction& left, const Gamble& right) -> bool {
        auto ext = extremal_weight(b, left, right);
        double here = dot(left.values, apply_right(b, out.weights[k], right).values);
        double cand = dot(left.values, apply_right(b, ext.weight, right).values);
        bool accept = improves(here, cand, tol) || (!current[k] && cand <= here + tol * std::max(1.0, std::abs(here)));
        if (!accept)
            return false;
        out.weights[k] = std::move(ext.weight);
        current[k] = std::move(ext.selection);
        value = cand;
        ++out.improvements;
        out.trace.push_back(value * sign);
        return true;
    };

    bool changed = n > 0;
    while (changed) {
        changed = false;
        ++out.sweeps;
        if (strategy.order == SweepOrder::LeftToRight) {
            // Suffixes only involve steps to the right of k, which this sweep
            // has not touched yet.
            std::vector<Gamble> suffix(n);
            suffix[n - 1] = g;
            for (std::size_t k = n - 1; k-- > 0;)
                suffix[k] = apply_right(b, out.weights[k + 1], suffix[k + 1]);
            MassFunction left = problem.q;
            for (std::size_t k = 0; k < n; ++k) {
                changed |= visit(k, left, suffix[k]);
                left = apply_left(b, left, out.weights[k]);
            }
        } else {
            std::vector<MassFunction> prefix(n);
            prefix[0] = problem.q;
            for (std::size_t k = 1; k < n; ++k)
                prefix[k] = apply_left(b, prefix[k - 1], out.weights[k - 1]);
            Gamble right = g;
            for (std::size_t k = n; k-- > 0;) {
                changed |= visit(k, prefix[k], right);
                right = apply_right(b, out.weights[k], right);
            }
        }
    }

    out.value = value * sign;
    out.selections.reserve(n);
    for (auto& sel : current)
        out.selections.push_back(sel ? std::move(*sel) : EdgeSelection{});
    return out;
}

EdgeSelection random_extremal_selection(const IntervalBounds& bounds, Rng& rng) {
    const std::size_t s = bounds.size();
    // rank_h[x] / rank_f[x]: position of state x in each random ordering.
    auto ph = rng.permutation(s);
    auto pf = rng.permutation(s);
    std::vector<double> rank_h(s), rank_f(s);
    for (std::size_t i = 0; i < s; ++i) {
        rank_h[ph[i]] = static_cast<double>(i);
        rank_f[pf[i]] = static_cast<double>(i);
    }
    EdgeSelection sel;
    sel.choices.reserve(bounds.free_edges().size());
    for (auto [x, y] : bounds.free_edges()) {
        double psi = (rank_h[x] - rank_h[y]) * (rank_f[y] - rank_f[x]);
        sel.choices.push_back(psi > 0.0 ? EdgeChoice::Lower : EdgeChoice::Upper);
    }
    return sel;
}

SelectionVector random_extremal_selections(const IntervalBounds& bounds, std::size_t steps, std::uint64_t seed) {
    Rng rng(seed);
    SelectionVector out;
    out.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k)
        out.push_back(random_extremal_selection(bounds, rng));
    return out;
}

WeightVector random_extremal_vector(const IntervalBounds& bounds, std::size_t steps, std::uint64_t seed) {
    return weights_from_selections(bounds, random_extremal_selections(bounds, steps, seed));
}

std::uint64_t start_seed(std::uint64_t seed, std::size_t index) { return derive_seed(seed, {index}); }

std::vector<double> MultistartReport::unique_values(double abs_tol) const {
    std::vector<double> values;
    values.reserve(unique_extrema.size());
    for (const auto& e : unique_extrema)
        values.push_back(e.value);
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    for (double v : values)
        if (out.empty() || v - out.back() > abs_tol)
            out.push_back(v);
    return out;
}

namespace {

MultistartReport aggregate(const OptimizationProblem& problem, std::vector<LocalOptimum>& results) {
    MultistartReport report;
    report.starts = results.size();
    report.runs.reserve(results.size());
    std::map<SelectionVector, std::size_t> index;
    std::size_t best = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        auto [it, inserted] = index.try_emplace(r.selections, report.unique_extrema.size());
        if (inserted)
            report.unique_extrema.push_back({r.selections, r.value, 0, i});
        ++report.unique_extrema[it->second].hits;
        report.runs.push_back({r.start_value, r.value, it->second, r.sweeps, r.improvements});
        bool better = problem.sense == Sense::Min ? r.value < results[best].value : r.value > results[best].value;
        if (better)
            best = i;
    }
    if (!results.empty())
        report.best = std::move(results[best]);
    return report;
}

} // namespace

MultistartReport multistart_from(const OptimizationProblem& problem, const std::vector<SelectionVector>& starts,
                                 SweepStrategy strategy, std::size_t threads) {
    check_problem(problem);
    if (starts.empty())
        throw std::invalid_argument("multistart needs at least one start");
    std::vector<LocalOptimum> results(starts.size());
    parallel_for(starts.size(), threads, [&](std::size_t i) {
        results[i] = local_optimize(problem, weights_from_selections(problem.bounds, starts[i]), strategy);
    });
    return aggregate(problem, results);
}

MultistartReport multistart(const OptimizationProblem& problem, std::size_t starts, std::uint64_t seed,
                            SweepStrategy strategy, std::size_t threads) {
    check_problem(problem);
    if (starts == 0)
        throw std::invalid_argument("multistart needs at least one start");
    std::vector<LocalOptimum> results(starts);
    parallel_for(starts, threads, [&](std::size_t i) {
        auto start = random_extremal_vector(problem.bounds, problem.steps, start_seed(seed, i));
        results[i] = local_optimize(problem, start, strategy);
    });
    auto report = aggregate(problem, results);
    report.seed = seed;
    return report;
}

} // namespace iwalk
