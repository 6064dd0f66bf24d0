#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "iwalk/instance_gen.hpp"
#include "iwalk/local_opt.hpp"

#include <set>

using namespace iwalk;
using namespace iwalk::testing;

TEST_CASE("improve_at on the example") {
    auto p = example1_problem(2, Sense::Min);
    auto w = example1_w(), wp = example1_wprime();

    auto a = improve_at(p, {w, wp}, 0);
    CHECK(a.selection == sel({L}));
    CHECK(near(a.value, 0.32));

    auto b = improve_at(p, {w, w}, 0);
    CHECK(b.selection == sel({U}));
    CHECK(near(b.value, 0.18));

    auto c = improve_at(p, {wp, wp}, 1);
    CHECK(c.selection == sel({L}));
    CHECK(near(c.value, 0.32));

    CHECK_THROWS_AS(improve_at(p, {w, w}, 2), std::out_of_range);
}

TEST_CASE("local_optimize on the example") {
    auto p = example1_problem(2, Sense::Min);
    auto w = example1_w(), wp = example1_wprime();

    auto r1 = local_optimize(p, {w, w});
    CHECK(near(r1.value, 0.18));
    CHECK(r1.improvements == 0);
    CHECK(r1.sweeps == 1);

    auto r2 = local_optimize(p, {wp, wp});
    CHECK(near(r2.value, 0.32));

    auto r3 = local_optimize(p, {w, wp}, {SweepOrder::LeftToRight});
    CHECK(near(r3.value, 0.32));
    CHECK(r3.selections == SelectionVector{sel({L}), sel({L})});
    CHECK(r3.improvements == 1);
    CHECK(near(r3.start_value, 0.74));

    // Right-to-left from the same start lands in the other basin.
    auto r4 = local_optimize(p, {w, wp}, {SweepOrder::RightToLeft});
    CHECK(near(r4.value, 0.18));

    auto m = local_optimize(example1_problem(2, Sense::Max), {w, w});
    CHECK(near(m.value, 0.74));
    CHECK(near(m.start_value, 0.18));
}

TEST_CASE("random extremal vectors") {
    auto b = example1_bounds();
    std::set<EdgeSelection> seen;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto v = random_extremal_vector(b, 3, seed);
        REQUIRE(v.size() == 3);
        for (const auto& w : v) {
            auto s = selection_of(b, w);
            REQUIRE(s);
            seen.insert(*s);
        }
        CHECK(v == random_extremal_vector(b, 3, seed));
    }
    CHECK(seen.size() == 2);

    RandomBoundsGen gen(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = gen.bounds(gen.pick(2, 8));
        for (const auto& w : random_extremal_vector(g, 4, gen.rng()))
            CHECK(is_feasible(g, w));
    }
}

TEST_CASE("multistart on the example") {
    auto lo = multistart(example1_problem(2, Sense::Min), 64, 7);
    CHECK(near(lo.best.value, 0.18));
    auto values = lo.unique_values();
    REQUIRE(values.size() == 2);
    CHECK(near(values[0], 0.18));
    CHECK(near(values[1], 0.32));
    std::size_t hits = 0;
    for (const auto& e : lo.unique_extrema)
        hits += e.hits;
    CHECK(hits == 64);
    for (const auto& r : lo.runs)
        CHECK(lo.best.value <= r.start_value);

    auto hi = multistart(example1_problem(2, Sense::Max), 64, 7);
    CHECK(near(hi.best.value, 0.74));
    for (const auto& r : hi.runs)
        CHECK(r.value >= r.start_value);
}

TEST_CASE("multistart is independent of the thread count") {
    GenParams gp;
    gp.vertices = 6;
    gp.seed = 5;
    auto inst = generate_instance(gp);
    OptimizationProblem p{inst.bounds, inst.q, inst.f, 4, Sense::Min};
    auto a = multistart(p, 200, 99, {}, 1);
    auto b = multistart(p, 200, 99, {}, 4);
    REQUIRE(a.runs.size() == b.runs.size());
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].value == b.runs[i].value);
        CHECK(a.runs[i].extremum == b.runs[i].extremum);
    }
    CHECK(a.best.selections == b.best.selections);
    CHECK(a.unique_extrema.size() == b.unique_extrema.size());
}

TEST_CASE("multistart rejects bad arguments") {
    auto p = example1_problem(2, Sense::Min);
    CHECK_THROWS_AS(multistart(p, 0, 1), std::invalid_argument);
    p.steps = 0;
    CHECK_THROWS_AS(multistart(p, 1, 1), std::invalid_argument);
}

namespace {

void check_local_optimum(const OptimizationProblem& p, const LocalOptimum& r, double tol, bool strict = true) {
    const double sign = p.sense == Sense::Min ? 1.0 : -1.0;
    // Descent trace.
    REQUIRE(r.trace.size() == r.improvements + 1);
    CHECK(r.trace.front() == r.start_value);
    CHECK(r.trace.back() == r.value);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        if (strict)
            CHECK(sign * r.trace[i] < sign * r.trace[i - 1]);
        else
            CHECK(sign * r.trace[i] <= sign * r.trace[i - 1] + tol * std::max(1.0, std::abs(r.trace[i - 1])));
    CHECK(sign * r.value <= sign * r.start_value);
    // Cached prefix/suffix value agrees with naive recomputation.
    CHECK(std::abs(r.value - naive_expectation(p.bounds, p.q.values, r.weights, p.f.values)) <= 1e-12);
    // Fixed point.
    CHECK(max_single_step_gain(p, r.weights) <= tol * std::max(1.0, std::abs(r.value)));
    // Extremal steps.
    REQUIRE(r.selections.size() == r.weights.size());
    for (std::size_t k = 0; k < r.weights.size(); ++k) {
        auto s = selection_of(p.bounds, r.weights[k]);
        REQUIRE(s);
        CHECK(*s == r.selections[k]);
    }
}

} // namespace

TEST_CASE("property: local optima are extremal fixed points reached by strict descent") {
    RandomBoundsGen gen(32);
    for (int trial = 0; trial < 300; ++trial) {
        auto b = gen.bounds(gen.pick(2, 7));
        std::size_t n = gen.pick(1, 6);
        OptimizationProblem p{b, MassFunction{gen.vec(b.size())}, Gamble{gen.vec(b.size())}, n,
                              trial % 2 ? Sense::Max : Sense::Min};
        auto start = random_extremal_vector(b, n, gen.rng());
        for (auto order : {SweepOrder::LeftToRight, SweepOrder::RightToLeft}) {
            auto r = local_optimize(p, start, {order});
            check_local_optimum(p, r, kDefaultImprovementTol);
            const std::size_t e = b.free_edges().size();
            if (e * n < 20)
                CHECK(r.sweeps <= (std::size_t{1} << (e * n)) + 1);
            CHECK(r.sweeps < 100);
        }
    }
}

TEST_CASE("property: non-extremal starts end extremal") {
    RandomBoundsGen gen(33);
    for (int trial = 0; trial < 100; ++trial) {
        auto b = gen.bounds(gen.pick(2, 6));
        std::size_t n = gen.pick(1, 4);
        OptimizationProblem p{b, MassFunction{gen.vec(b.size())}, Gamble{gen.vec(b.size())}, n, Sense::Min};
        WeightVector start;
        for (std::size_t k = 0; k < n; ++k)
            start.push_back(gen.interior(b));
        auto r = local_optimize(p, start);
        check_local_optimum(p, r, kDefaultImprovementTol, false);
    }
}

TEST_CASE("unique value clustering") {
    MultistartReport r;
    r.unique_extrema = {{{}, 0.5, 1, 0}, {{}, 0.5 + 1e-11, 1, 1}, {{}, 0.25, 1, 2}};
    auto v = r.unique_values();
    REQUIRE(v.size() == 2);
    CHECK(v[0] == 0.25);
}

TEST_CASE("parse helpers") {
    CHECK(parse_sense("min") == Sense::Min);
    CHECK(parse_sense("max") == Sense::Max);
    CHECK_THROWS(parse_sense("both"));
    CHECK(parse_sweep_order("right-to-left") == SweepOrder::RightToLeft);
    CHECK(parse_sweep_order(to_string(SweepOrder::LeftToRight)) == SweepOrder::LeftToRight);
    CHECK_THROWS(parse_sweep_order("middle"));
}
