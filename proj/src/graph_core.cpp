#include "iwalk/graph_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace iwalk {

namespace {

bool close_rel(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= kRelTol * scale;
}

void require_finite(const Matrix& m, const char* what) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (!std::isfinite(m(i, j)))
                throw StructuralError(std::string(what) + " matrix has a non-finite entry");
}

Matrix checked_matrix(const std::vector<std::vector<double>>& rows, std::size_t s, const char* what) {
    if (rows.size() != s)
        throw StructuralError(std::string(what) + " matrix has " + std::to_string(rows.size()) +
                              " rows, expected " + std::to_string(s));
    for (const auto& row : rows)
        if (row.size() != s)
            throw StructuralError(std::string(what) + " matrix row has " + std::to_string(row.size()) +
                                  " columns, expected " + std::to_string(s));
    return Matrix::from_rows(rows);
}

std::string pair_name(const StateSpace& states, std::size_t x, std::size_t y) {
    return "{" + states.label(x) + "," + states.label(y) + "}";
}

} // namespace

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2)
        throw StructuralError("state space needs at least 2 states");
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw StructuralError("duplicate state label '" + l + "'");
}

StateSpace StateSpace::numbered(std::size_t s) {
    std::vector<std::string> labels;
    labels.reserve(s);
    for (std::size_t i = 1; i <= s; ++i)
        labels.push_back(std::to_string(i));
    return StateSpace(std::move(labels));
}

std::optional<std::size_t> StateSpace::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

IntervalBounds IntervalBounds::create(StateSpace states, const std::vector<std::vector<double>>& lower,
                                      const std::vector<std::vector<double>>& upper,
                                      std::vector<double> marginal) {
    std::size_t s = states.size();
    return create(std::move(states), checked_matrix(lower, s, "lower"), checked_matrix(upper, s, "upper"),
                  std::move(marginal));
}

IntervalBounds IntervalBounds::create(StateSpace states, Matrix lower, Matrix upper,
                                      std::vector<double> marginal) {
    const std::size_t s = states.size();
    if (lower.size() != s || upper.size() != s)
        throw StructuralError("bound matrices must be " + std::to_string(s) + "x" + std::to_string(s));
    if (marginal.size() != s)
        throw StructuralError("marginal has " + std::to_string(marginal.size()) + " entries, expected " +
                              std::to_string(s));
    require_finite(lower, "lower");
    require_finite(upper, "upper");
    for (double m : marginal)
        if (!std::isfinite(m))
            throw StructuralError("marginal has a non-finite entry");

    IntervalBounds b;
    b.states_ = std::move(states);
    b.lower_ = std::move(lower);
    b.upper_ = std::move(upper);
    b.marginal_ = std::move(marginal);
    b.total_ = std::accumulate(b.marginal_.begin(), b.marginal_.end(), 0.0);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = x + 1; y < s; ++y)
            if (b.lower_(x, y) < b.upper_(x, y))
                b.free_edges_.push_back({x, y});
    return b;
}

double IntervalBounds::min_loop(std::size_t x) const {
    double used = 0.0;
    for (std::size_t y = 0; y < size(); ++y)
        if (y != x)
            used += upper_(x, y);
    return std::max(0.0, marginal_[x] - used);
}

std::string to_string(ViolationCode code) {
    switch (code) {
    case ViolationCode::Symmetry: return "SYMMETRY";
    case ViolationCode::Order: return "ORDER";
    case ViolationCode::Feasibility: return "FEASIBILITY";
    case ViolationCode::Convention: return "CONVENTION";
    case ViolationCode::Connectivity: return "CONNECTIVITY";
    case ViolationCode::Positivity: return "POSITIVITY";
    }
    return "UNKNOWN";
}

bool ValidationReport::has(ViolationCode code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [code](const Violation& v) { return v.code == code; });
}

ValidationReport validate(const IntervalBounds& bounds) {
    ValidationReport report;
    const auto& st = bounds.states();
    const std::size_t s = bounds.size();
    auto add = [&](ViolationCode code, std::size_t x, std::optional<std::size_t> y, std::string msg) {
        report.violations.push_back({code, x, y, std::move(msg)});
    };

    for (std::size_t x = 0; x < s; ++x) {
        if (!(bounds.marginal(x) > 0.0))
            add(ViolationCode::Positivity, x, std::nullopt, "W(" + st.label(x) + ") must be positive");
        // Loops are derived; the stored diagonal must be empty.
        if (bounds.lower(x, x) != 0.0 || bounds.upper(x, x) != 0.0)
            add(ViolationCode::Convention, x, x, "diagonal bound at " + pair_name(st, x, x) + " must be 0");
    }

    for (std::size_t x = 0; x < s; ++x) {
        for (std::size_t y = 0; y < s; ++y) {
            if (x == y)
                continue;
            double lo = bounds.lower(x, y);
            double up = bounds.upper(x, y);
            if (x < y) {
                if (lo != bounds.lower(y, x) || up != bounds.upper(y, x))
                    add(ViolationCode::Symmetry, x, y, "bounds at " + pair_name(st, x, y) + " are not symmetric");
            }
            if (lo < 0.0 || up < 0.0) {
                add(ViolationCode::Positivity, x, y, "negative bound at " + pair_name(st, x, y));
                continue;
            }
            if (x > y)
                continue;
            if (lo > up)
                add(ViolationCode::Order, x, y, "lower > upper at " + pair_name(st, x, y));
            if (!(up == 0.0 || lo > 0.0))
                add(ViolationCode::Convention, x, y,
                    "edge " + pair_name(st, x, y) + " has positive upper bound but zero lower bound");
        }
    }

    for (std::size_t x = 0; x < s; ++x) {
        double used = 0.0;
        for (std::size_t y = 0; y < s; ++y)
            if (y != x)
                used += bounds.upper(x, y);
        if (used > bounds.marginal(x)) {
            std::ostringstream msg;
            msg << "sum of upper bounds at state " << st.label(x) << " (" << used << ") exceeds W = "
                << bounds.marginal(x);
            add(ViolationCode::Feasibility, x, std::nullopt, msg.str());
        } else if (used == bounds.marginal(x)) {
            report.warnings.push_back("state " + st.label(x) + " can have a zero loop weight");
        }
    }

    // Connectivity over edges with strictly positive lower weight.
    std::vector<bool> seen(s, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y = 0; y < s; ++y)
            if (y != x && !seen[y] && bounds.lower(x, y) > 0.0 && bounds.lower(y, x) > 0.0) {
                seen[y] = true;
                stack.push_back(y);
            }
    }
    for (std::size_t y = 0; y < s; ++y)
        if (!seen[y])
            add(ViolationCode::Connectivity, 0, y,
                "state " + st.label(y) + " is not reachable from " + st.label(0) + " over positive edges");

    return report;
}

std::string to_string(const EdgeSelection& sel) {
    std::string out;
    out.reserve(sel.size());
    for (auto c : sel.choices)
        out.push_back(c == EdgeChoice::Lower ? 'L' : 'U');
    return out;
}

WeightFunction WeightFunction::from_offdiag(const IntervalBounds& bounds, const Matrix& offdiag) {
    const std::size_t s = bounds.size();
    if (offdiag.size() != s)
        throw StructuralError("weight matrix must be " + std::to_string(s) + "x" + std::to_string(s));
    WeightFunction w;
    w.weights_ = offdiag;
    for (std::size_t x = 0; x < s; ++x) {
        double used = 0.0;
        for (std::size_t y = 0; y < s; ++y)
            if (y != x)
                used += offdiag(x, y);
        double loop = bounds.marginal(x) - used;
        // Rounding when the edges use up W(x) exactly.
        if (loop < 0.0 && -loop <= kRelTol * bounds.marginal(x))
            loop = 0.0;
        w.weights_(x, x) = loop;
    }
    return w;
}

bool is_feasible(const IntervalBounds& bounds, const WeightFunction& w) {
    const std::size_t s = bounds.size();
    if (w.size() != s)
        return false;
    for (std::size_t x = 0; x < s; ++x) {
        double row = 0.0;
        for (std::size_t y = 0; y < s; ++y) {
            row += w(x, y);
            if (x == y)
                continue;
            double slack = kRelTol * std::max(1.0, bounds.upper(x, y));
            if (w(x, y) < bounds.lower(x, y) - slack || w(x, y) > bounds.upper(x, y) + slack)
                return false;
            if (w(x, y) != w(y, x) && !close_rel(w(x, y), w(y, x)))
                return false;
        }
        if (w.loop(x) < 0.0)
            return false;
        if (std::abs(row - bounds.marginal(x)) > kRelTol * bounds.marginal(x))
            return false;
    }
    return true;
}

WeightFunction weight_from_selection(const IntervalBounds& bounds, const EdgeSelection& sel) {
    const auto& edges = bounds.free_edges();
    if (sel.size() != edges.size())
        throw std::invalid_argument("selection has " + std::to_string(sel.size()) + " choices, bounds have " +
                                    std::to_string(edges.size()) + " free edges");
    // Degenerate edges sit at lower == upper.
    Matrix off = bounds.lower_matrix();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (sel.choices[i] == EdgeChoice::Upper) {
            auto [x, y] = edges[i];
            off(x, y) = bounds.upper(x, y);
            off(y, x) = bounds.upper(y, x);
        }
    }
    return WeightFunction::from_offdiag(bounds, off);
}

PsiField psi_field(const IntervalBounds& bounds, std::span<const double> q, std::span<const double> f) {
    const std::size_t s = bounds.size();
    if (q.size() != s || f.size() != s)
        throw StructuralError("q and f must have one entry per state");
    std::vector<double> h(s);
    for (std::size_t x = 0; x < s; ++x)
        h[x] = q[x] / bounds.marginal(x);
    Matrix psi(s);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = x + 1; y < s; ++y) {
            double v = (h[x] - h[y]) * (f[y] - f[x]);
            psi(x, y) = v;
            psi(y, x) = v;
        }
    return PsiField(std::move(psi));
}

EdgeSelection selection_from_psi(const IntervalBounds& bounds, const PsiField& psi) {
    EdgeSelection sel;
    sel.choices.reserve(bounds.free_edges().size());
    for (auto [x, y] : bounds.free_edges())
        sel.choices.push_back(psi(x, y) > 0.0 ? EdgeChoice::Lower : EdgeChoice::Upper);
    return sel;
}

ExtremalWeight extremal_weight(const IntervalBounds& bounds, std::span<const double> q,
                               std::span<const double> f) {
    EdgeSelection sel = selection_from_psi(bounds, psi_field(bounds, q, f));
    WeightFunction w = weight_from_selection(bounds, sel);
    return {std::move(w), std::move(sel)};
}

std::optional<EdgeSelection> selection_of(const IntervalBounds& bounds, const WeightFunction& w) {
    if (w.size() != bounds.size())
        return std::nullopt;
    EdgeSelection sel;
    sel.choices.reserve(bounds.free_edges().size());
    for (auto [x, y] : bounds.free_edges()) {
        double v = w(x, y);
        if (close_rel(v, bounds.lower(x, y)))
            sel.choices.push_back(EdgeChoice::Lower);
        else if (close_rel(v, bounds.upper(x, y)))
            sel.choices.push_back(EdgeChoice::Upper);
        else
            return std::nullopt;
    }
    return sel;
}

} // namespace iwalk
