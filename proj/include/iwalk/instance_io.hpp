#pragma once

// Text formats: instance files and experiment configs are JSON documents.
//
// Instance file:
//   {
//     "format": "iwalk-instance", "version": 1,
//     "states": ["1", "2"],
//     "lower":  [[0, 0.2], [0.2, 0]],
//     "upper":  [[0, 0.9], [0.9, 0]],
//     "marginal": [1, 1],
//     "q": [1, 0], "f": [0, 1],
//     "steps": 2
//   }
// Doubles are written in shortest round-trip decimal form, so reading a
// written file reproduces every value bit for bit.

#include "iwalk/instance_gen.hpp"
#include "iwalk/local_opt.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwalk {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InstanceFile {
    std::vector<std::string> states;
    std::vector<std::vector<double>> lower;
    std::vector<std::vector<double>> upper;
    std::vector<double> marginal;
    std::vector<double> q;
    std::vector<double> f;
    std::size_t steps = 1;

    bool operator==(const InstanceFile&) const = default;
};

InstanceFile instance_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const InstanceFile& inst);

// Throws FormatError on unreadable or malformed input.
InstanceFile parse_instance(const std::string& text);
InstanceFile read_instance(const std::filesystem::path& path);

std::string serialize_instance(const InstanceFile& inst);
void write_instance(const std::filesystem::path& path, const InstanceFile& inst);

// Structural errors (bad shapes, duplicate labels) surface as StructuralError.
IntervalBounds bounds_of(const InstanceFile& inst);
OptimizationProblem problem_of(const InstanceFile& inst, Sense sense);
InstanceFile instance_of(const GeneratedInstance& gen, std::size_t steps);

struct ExperimentConfig {
    std::vector<std::size_t> vertices{4, 6, 8};
    std::vector<std::size_t> steps{2, 4, 6};
    std::size_t instances = 50;
    std::size_t starts = 300;
    std::uint64_t seed = 1;
    std::vector<SweepOrder> strategies{SweepOrder::LeftToRight};
    Sense sense = Sense::Min; // for single-sense experiments
    std::string output_dir = ".";
    std::size_t threads = 1;
    GenParams gen; // vertices and seed are overridden per instance
};

// Throws std::invalid_argument when a count is zero or a list is empty.
void check_config(const ExperimentConfig& config);

// Fields missing from `doc` keep their value from `base`.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig read_config(const std::filesystem::path& path, ExperimentConfig base = {});

// Writes `doc` pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

} // namespace iwalk
