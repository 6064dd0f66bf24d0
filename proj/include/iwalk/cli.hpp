#pragma once

// Command implementations behind the `iwalk` executable. Each returns the
// process exit code and writes human-readable output to `out`, diagnostics
// to `err`.
//
// Exit codes: 0 success, 1 invalid instance or refused request,
// 2 unreadable/unparseable input or bad arguments.

#include "iwalk/instance_io.hpp"
#include "iwalk/local_opt.hpp"
#include "iwalk/oracle.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace iwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInput = 2;

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);

struct BoundsOptions {
    std::size_t starts = 300;
    std::uint64_t seed = 1;
    SweepOrder strategy = SweepOrder::LeftToRight;
    std::string sense = "both"; // min | max | both
    std::size_t threads = 1;
    std::optional<std::string> out; // JSON result record
};

int cmd_bounds(const std::string& path, const BoundsOptions& opts, std::ostream& out, std::ostream& err);

struct OracleOptions {
    std::uint64_t budget = kDefaultEvaluationBudget;
    std::optional<std::string> out;
};

int cmd_oracle(const std::string& path, const OracleOptions& opts, std::ostream& out, std::ostream& err);

struct GenOptions {
    GenParams params;
    std::size_t steps = 2;
    std::string out;
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

enum class Experiment { Count, Sweep, Scatter, Deviation };

// Defaults for each experiment before config-file and flag overrides.
ExperimentConfig default_config(Experiment kind);

int cmd_experiment(Experiment kind, const ExperimentConfig& config, std::ostream& out, std::ostream& err);

} // namespace iwalk::cli
