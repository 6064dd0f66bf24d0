#pragma once

// Interval-weighted graphs with fixed vertex marginals.
//
// An IntervalBounds holds symmetric lower/upper bounds on the off-diagonal
// edge weights and the per-vertex weight total W(x). Loops are never input:
// a concrete WeightFunction puts whatever mass the edges leave over on the
// diagonal, so every row sums to W(x).

#include "iwalk/matrix.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwalk {

// Relative tolerance used for invariant checks and for recognising extremal
// edge values.
inline constexpr double kRelTol = 1e-12;

// Thrown when inputs are malformed (wrong dimensions, non-finite values,
// duplicate labels). Constraint violations on well-formed inputs are reported
// by validate() instead.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class StateSpace {
public:
    StateSpace() = default;
    explicit StateSpace(std::vector<std::string> labels);

    // States labelled "1", "2", ..., "s".
    static StateSpace numbered(std::size_t s);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::optional<std::size_t> index_of(const std::string& label) const;

    bool operator==(const StateSpace&) const = default;

private:
    std::vector<std::string> labels_;
};

// Unordered pair {x, y}, stored with x < y.
struct Edge {
    std::size_t x = 0;
    std::size_t y = 0;
    auto operator<=>(const Edge&) const = default;
};

class IntervalBounds {
public:
    IntervalBounds() = default;

    // Checks shape and finiteness only; model constraints go through validate().
    static IntervalBounds create(StateSpace states, const std::vector<std::vector<double>>& lower,
                                 const std::vector<std::vector<double>>& upper,
                                 std::vector<double> marginal);
    static IntervalBounds create(StateSpace states, Matrix lower, Matrix upper,
                                 std::vector<double> marginal);

    const StateSpace& states() const { return states_; }
    std::size_t size() const { return states_.size(); }

    double lower(std::size_t x, std::size_t y) const { return lower_(x, y); }
    double upper(std::size_t x, std::size_t y) const { return upper_(x, y); }
    const Matrix& lower_matrix() const { return lower_; }
    const Matrix& upper_matrix() const { return upper_; }

    double marginal(std::size_t x) const { return marginal_[x]; }
    const std::vector<double>& marginals() const { return marginal_; }
    double total() const { return total_; }

    // Non-degenerate edges (lower < upper), lexicographic in (x, y).
    const std::vector<Edge>& free_edges() const { return free_edges_; }

    // Smallest attainable loop weight: W(x) minus the sum of upper bounds.
    double min_loop(std::size_t x) const;

private:
    StateSpace states_;
    Matrix lower_;
    Matrix upper_;
    std::vector<double> marginal_;
    double total_ = 0.0;
    std::vector<Edge> free_edges_;
};

enum class ViolationCode { Symmetry, Order, Feasibility, Convention, Connectivity, Positivity };

std::string to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::size_t x = 0;
    std::optional<std::size_t> y; // absent for per-state constraints
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    // Non-fatal findings, e.g. a state whose loop can be driven to zero.
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
    bool has(ViolationCode code) const;
};

ValidationReport validate(const IntervalBounds& bounds);

enum class EdgeChoice : std::uint8_t { Lower = 0, Upper = 1 };

// One choice per free edge of the bounds it was built against, in
// free_edges() order.
struct EdgeSelection {
    std::vector<EdgeChoice> choices;

    std::size_t size() const { return choices.size(); }
    auto operator<=>(const EdgeSelection&) const = default;
    bool operator==(const EdgeSelection&) const = default;
};

std::string to_string(const EdgeSelection& sel);

class WeightFunction {
public:
    WeightFunction() = default;

    // Builds w from off-diagonal weights; loops become the residual mass.
    // Diagonal entries of `offdiag` are ignored.
    static WeightFunction from_offdiag(const IntervalBounds& bounds, const Matrix& offdiag);

    std::size_t size() const { return weights_.size(); }
    double operator()(std::size_t x, std::size_t y) const { return weights_(x, y); }
    double offdiag(std::size_t x, std::size_t y) const { return weights_(x, y); }
    double loop(std::size_t x) const { return weights_(x, x); }

    // Full weight matrix, loops on the diagonal.
    const Matrix& matrix() const { return weights_; }

    bool operator==(const WeightFunction&) const = default;

private:
    Matrix weights_;
};

// True when w lies in the feasible set within kRelTol.
bool is_feasible(const IntervalBounds& bounds, const WeightFunction& w);

WeightFunction weight_from_selection(const IntervalBounds& bounds, const EdgeSelection& sel);

// ψ(x, y) = (h(x) - h(y)) (f(y) - f(x)) with h = q / W.
class PsiField {
public:
    explicit PsiField(Matrix values) : values_(std::move(values)) {}
    double operator()(std::size_t x, std::size_t y) const { return values_(x, y); }
    const Matrix& matrix() const { return values_; }

private:
    Matrix values_;
};

PsiField psi_field(const IntervalBounds& bounds, std::span<const double> q, std::span<const double> f);

// Selection rule: LOWER where psi > 0, UPPER otherwise.
EdgeSelection selection_from_psi(const IntervalBounds& bounds, const PsiField& psi);

struct ExtremalWeight {
    WeightFunction weight;
    EdgeSelection selection;
};

// The weight function minimising <q, T_w f> over the feasible set.
ExtremalWeight extremal_weight(const IntervalBounds& bounds, std::span<const double> q,
                               std::span<const double> f);

// Recovers the selection that reproduces w, or nullopt if some free edge sits
// strictly inside its interval.
std::optional<EdgeSelection> selection_of(const IntervalBounds& bounds, const WeightFunction& w);

} // namespace iwalk
