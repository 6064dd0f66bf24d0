#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "iwalk/instance_gen.hpp"
#include "iwalk/rng.hpp"

#include <set>

using namespace iwalk;
using namespace iwalk::testing;

namespace {

GenParams params(std::size_t vertices, std::uint64_t seed) {
    GenParams p;
    p.vertices = vertices;
    p.seed = seed;
    return p;
}

} // namespace

TEST_CASE("generation is deterministic in the seed") {
    auto a = generate_instance(params(6, 17));
    auto b = generate_instance(params(6, 17));
    CHECK(a.bounds.lower_matrix() == b.bounds.lower_matrix());
    CHECK(a.bounds.upper_matrix() == b.bounds.upper_matrix());
    CHECK(a.bounds.marginals() == b.bounds.marginals());
    CHECK(a.q.values == b.q.values);
    CHECK(a.f.values == b.f.values);
    auto c = generate_instance(params(6, 18));
    CHECK(c.q.values != a.q.values);
}

TEST_CASE("generated instances validate cleanly") {
    for (std::size_t s : {2, 3, 4, 6, 8, 12})
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto g = generate_instance(params(s, seed));
            auto report = validate(g.bounds);
            CHECK(report.ok());
            CHECK(report.warnings.empty());
            for (std::size_t x = 0; x < s; ++x) {
                CHECK(g.q[x] > 0.0);
                CHECK(g.f[x] > 0.0);
                double sum = 0.0;
                for (std::size_t y = 0; y < s; ++y)
                    sum += g.bounds.upper(x, y);
                CHECK(near(g.bounds.marginal(x), 1.1 * sum, 1e-12 * sum));
            }
            for (auto [x, y] : g.bounds.free_edges())
                CHECK(g.bounds.upper(x, y) > g.bounds.lower(x, y));
        }
}

TEST_CASE("absent pair fraction at 8 vertices") {
    std::size_t pairs = 0, absent = 0;
    for (std::uint64_t seed = 0; pairs < 10000; ++seed) {
        auto g = generate_instance(params(8, seed));
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = x + 1; y < 8; ++y) {
                ++pairs;
                absent += g.bounds.upper(x, y) == 0.0;
            }
    }
    double frac = static_cast<double>(absent) / static_cast<double>(pairs);
    MESSAGE("absent fraction " << frac);
    CHECK(std::abs(frac - 0.25) <= 0.02);
}

TEST_CASE("lower bound mean") {
    std::size_t count = 0;
    double sum = 0.0;
    for (std::uint64_t seed = 0; count < 100000; ++seed) {
        auto g = generate_instance(params(8, seed));
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = x + 1; y < 8; ++y)
                if (g.bounds.lower(x, y) > 0.0) {
                    sum += g.bounds.lower(x, y);
                    ++count;
                }
    }
    double mean = sum / static_cast<double>(count);
    MESSAGE("lower mean " << mean);
    CHECK(std::abs(mean - 0.8) <= 0.02);
}

TEST_CASE("impossible connectivity is reported") {
    auto p = params(30, 3);
    p.disconnect_fraction = 0.99;
    p.connect_retries = 5;
    CHECK_THROWS_AS(generate_instance(p), GenerationError);
    p.vertices = 1;
    CHECK_THROWS_AS(generate_instance(p), std::invalid_argument);
}

TEST_CASE("rng helpers") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());
    Rng r(9);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double u = r.uniform_open();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 0.01);
    for (int i = 0; i < 1000; ++i)
        CHECK(r.below(7) < 7);
    auto perm = r.permutation(10);
    CHECK(std::set<std::size_t>(perm.begin(), perm.end()).size() == 10);
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
}
