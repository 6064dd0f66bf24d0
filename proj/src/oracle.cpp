#include "iwalk/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace iwalk {

EdgeSelection selection_at(std::size_t edges, std::uint64_t index) {
    EdgeSelection sel;
    sel.choices.resize(edges);
    for (std::size_t j = 0; j < edges; ++j) {
        bool upper = (index >> (edges - 1 - j)) & 1U;
        sel.choices[j] = upper ? EdgeChoice::Upper : EdgeChoice::Lower;
    }
    return sel;
}

std::vector<ExtremalCandidate> enumerate_extremal(const IntervalBounds& bounds, std::size_t edge_cap) {
    const std::size_t e = bounds.free_edges().size();
    if (e > edge_cap || e >= 63)
        throw OracleRefusal("refusing to enumerate 2^" + std::to_string(e) + " extremal weight functions: " +
                            std::to_string(e) + " free edges exceeds the cap of " + std::to_string(edge_cap));
    const std::uint64_t count = std::uint64_t{1} << e;
    std::vector<ExtremalCandidate> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        auto sel = selection_at(e, i);
        auto w = weight_from_selection(bounds, sel);
        out.push_back({std::move(sel), std::move(w)});
    }
    return out;
}

std::uint64_t enumeration_size(const IntervalBounds& bounds, std::size_t steps) {
    const std::size_t e = bounds.free_edges().size();
    // log2 of (2^e)^steps
    if (steps == 0 || e == 0)
        return 1;
    if (e * steps >= 64 || e >= 64)
        return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << (e * steps);
}

namespace {

void check_budget(const IntervalBounds& bounds, std::size_t steps, std::uint64_t budget) {
    std::uint64_t total = enumeration_size(bounds, steps);
    if (total > budget)
        throw OracleRefusal("refusing exhaustive search: (2^" + std::to_string(bounds.free_edges().size()) + ")^" +
                            std::to_string(steps) + " weight vectors exceeds the evaluation budget of " +
                            std::to_string(budget));
}

} // namespace

std::vector<SelectionVector> enumerate_extremal_vectors(const IntervalBounds& bounds, std::size_t steps,
                                                        std::uint64_t budget) {
    check_budget(bounds, steps, budget);
    auto cands = enumerate_extremal(bounds, 63);
    const std::uint64_t total = enumeration_size(bounds, steps);
    const std::uint64_t per_step = cands.size();
    std::vector<SelectionVector> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) {
        SelectionVector v(steps);
        std::uint64_t rest = i;
        for (std::size_t k = steps; k-- > 0;) {
            v[k] = cands[rest % per_step].selection;
            rest /= per_step;
        }
        out.push_back(std::move(v));
    }
    return out;
}

ExactBounds exact_bounds(const IntervalBounds& bounds, const MassFunction& q, const Gamble& f, std::size_t steps,
                         std::uint64_t budget) {
    if (q.size() != bounds.size() || f.size() != bounds.size())
        throw std::invalid_argument("q and f must have one entry per state");
    ExactBounds out;
    if (steps == 0) {
        out.min = out.max = dot(q.values, f.values);
        out.argmin = out.argmax = {SelectionVector{}};
        out.evaluations = 1;
        return out;
    }
    check_budget(bounds, steps, budget);
    const auto cands = enumerate_extremal(bounds, 63);

    // Leaf value <left, T_w f> uses T_w f precomputed per candidate.
    std::vector<Gamble> last;
    last.reserve(cands.size());
    for (const auto& c : cands)
        last.push_back(apply_right(bounds, c.weight, f));

    std::vector<std::size_t> digits(steps);
    std::vector<MassFunction> left(steps);
    left[0] = q;

    // Depth-first over step choices, first step outermost, so leaves are
    // visited in lexicographic order.
    auto walk = [&](auto&& on_leaf) {
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            for (std::size_t c = 0; c < cands.size(); ++c) {
                digits[k] = c;
                if (k + 1 == steps) {
                    on_leaf(dot(left[k].values, last[c].values));
                } else {
                    left[k + 1] = apply_left(bounds, left[k], cands[c].weight);
                    rec(k + 1);
                }
            }
        };
        rec(0);
    };
    auto current_vector = [&] {
        SelectionVector v(steps);
        for (std::size_t k = 0; k < steps; ++k)
            v[k] = cands[digits[k]].selection;
        return v;
    };

    out.min = std::numeric_limits<double>::infinity();
    out.max = -std::numeric_limits<double>::infinity();
    walk([&](double v) {
        ++out.evaluations;
        out.min = std::min(out.min, v);
        out.max = std::max(out.max, v);
    });
    walk([&](double v) {
        if (v <= out.min + kArgTol)
            out.argmin.push_back(current_vector());
        if (v >= out.max - kArgTol)
            out.argmax.push_back(current_vector());
    });
    return out;
}

} // namespace iwalk
