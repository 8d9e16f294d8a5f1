#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "instance.hpp"

namespace fleckforge::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kViolation = 2, kCeiling = 3 };

struct RunOptions {
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> ceiling;  // --ceiling; beats the environment and the instance
    bool exact = false;
    bool timings = false;
};

struct Outcome {
    Json report;
    int exit_code = kOk;
};

/// --ceiling, then FLECKFORGE_CEILING, then the instance's own value, then the default.
std::uint64_t resolve_ceiling(const RunOptions& opts, std::optional<std::uint64_t> from_instance);

Outcome run_fleck(const FleckInstance& inst, const RunOptions& opts);
Outcome run_synthesize(const SynthesizeInstance& inst, const RunOptions& opts);
Outcome run_count(const CountInstance& inst, const RunOptions& opts);
/// Dispatches on the instance kind.
Outcome run_instance(const Instance& inst, const RunOptions& opts);

struct BoundsRequest {
    std::uint32_t p = 2;
    std::uint32_t a = 1;
    std::uint64_t n = 0;
    std::uint64_t l = 0;
    std::optional<std::uint64_t> b;
};
Outcome run_bounds(const BoundsRequest& req);

struct SweepRequest {
    std::uint64_t seed = 1;
    std::chrono::milliseconds budget{60'000};
    std::uint64_t rounds = 500;
    std::optional<std::string> log_path;
};
Outcome run_sweep(const SweepRequest& req, const RunOptions& opts);

std::string rational_str(const Rational& q);

}  // namespace fleckforge::cli
