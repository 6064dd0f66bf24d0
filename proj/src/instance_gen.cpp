#include "iwalk/instance_gen.hpp"

#include "iwalk/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace iwalk {

namespace {

bool connected(const std::vector<std::vector<bool>>& adj) {
    const std::size_t s = adj.size();
    std::vector<bool> seen(s, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y = 0; y < s; ++y)
            if (adj[x][y] && !seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
    }
    return reached == s;
}

} // namespace

void check_params(const GenParams& p) {
    if (p.vertices < 2)
        throw std::invalid_argument("need at least 2 vertices");
    if (!(p.disconnect_fraction >= 0.0 && p.disconnect_fraction < 1.0))
        throw std::invalid_argument("disconnect fraction must lie in [0, 1)");
    if (!(p.lower_mean > 0.0 && p.width_mean > 0.0 && p.qf_mean > 0.0))
        throw std::invalid_argument("distribution means must be positive");
    if (!(p.marginal_slack > 0.0))
        throw std::invalid_argument("marginal slack must be positive");
    if (p.connect_retries == 0)
        throw std::invalid_argument("connect retries must be positive");
}

GeneratedInstance generate_instance(const GenParams& p) {
    check_params(p);
    const std::size_t s = p.vertices;
    Rng rng(p.seed);

    std::vector<std::vector<bool>> adj;
    std::size_t attempt = 0;
    for (;; ++attempt) {
        if (attempt == p.connect_retries)
            throw GenerationError("no connected graph after " + std::to_string(p.connect_retries) + " attempts");
        adj.assign(s, std::vector<bool>(s, false));
        for (std::size_t x = 0; x < s; ++x)
            for (std::size_t y = x + 1; y < s; ++y)
                adj[x][y] = adj[y][x] = !rng.bernoulli(p.disconnect_fraction);
        if (connected(adj))
            break;
    }

    Matrix lower(s), upper(s);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = x + 1; y < s; ++y) {
            if (!adj[x][y])
                continue;
            double lo = rng.exponential(p.lower_mean);
            double up = lo * (1.0 + rng.exponential(p.width_mean));
            lower(x, y) = lower(y, x) = lo;
            upper(x, y) = upper(y, x) = up;
        }

    std::vector<double> marginal(s, 0.0);
    for (std::size_t x = 0; x < s; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < s; ++y)
            sum += upper(x, y);
        marginal[x] = (1.0 + p.marginal_slack) * sum;
    }

    MassFunction q{std::vector<double>(s)};
    Gamble f{std::vector<double>(s)};
    for (std::size_t x = 0; x < s; ++x)
        q[x] = rng.exponential(p.qf_mean);
    for (std::size_t x = 0; x < s; ++x)
        f[x] = rng.exponential(p.qf_mean);

    auto bounds = IntervalBounds::create(StateSpace::numbered(s), std::move(lower), std::move(upper),
                                         std::move(marginal));
    return {std::move(bounds), std::move(q), std::move(f)};
}

} // namespace iwalk
