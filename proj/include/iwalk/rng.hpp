#pragma once

// Portable seeded randomness.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Everything built on top of it (uniform doubles, bounded integers,
// exponentials, shuffles) is implemented here rather than with <random>
// distributions, whose algorithms differ between standard libraries.
//
// Stream splitting: derive_seed(seed, a, b, ...) folds each index into the
// seed with the SplitMix64 finaliser, so substreams for (cell, instance,
// start) are independent of evaluation order.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace iwalk {

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open();

    // Uniform integer in [0, n), unbiased (Lemire's multiply-and-reject).
    std::uint64_t below(std::uint64_t n);

    // Exponential with the given mean, by inverse CDF.
    double exponential(double mean);

    bool bernoulli(double p) { return uniform_open() < p; }

    // Uniformly random permutation of 0..n-1 (Fisher-Yates).
    std::vector<std::size_t> permutation(std::size_t n);

private:
    std::mt19937_64 engine_;
};

} // namespace iwalk
