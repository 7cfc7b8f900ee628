#pragma once

#include "sweep/epimodel.hpp"
#include "sweep/plan.hpp"
#include "sweep/slurm.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sweep {

/// Everything a sweep needs, as read from one JSON config file with
/// sections `exploration`, `parameters`, `model` and `slurm` (all
/// optional, all validated).
struct SweepConfig {
    ExplorationConfig exploration;
    std::vector<ParameterSpec> parameters;
    EpidemicParams model;
    SlurmConfig slurm;
};

/// Parses and validates a config file. Unknown fields, type mismatches and
/// invariant violations raise ConfigError naming the field path (e.g.
/// "exploration.replications"). A relative exploration.modelSource is
/// resolved against the config file's directory ("builtin" is kept as-is).
SweepConfig load_config(const std::filesystem::path& file);

/// Parses a config document from memory; `base_dir` resolves relative
/// paths.
SweepConfig parse_config(const std::string& text,
                         const std::filesystem::path& base_dir);

struct PlanCounts {
    std::int64_t points = 0;
    std::int64_t tasks = 0;
    std::int64_t chunks = 0;
};

/// Writes `plan.json`, the self-contained description of a generated plan
/// (config sections + counts) that later pipeline stages rebuild the plan
/// from. Byte-deterministic.
void write_plan_json(const SweepConfig& config, const PlanCounts& counts,
                     const std::filesystem::path& path);

struct PlanInfo {
    SweepConfig config;
    PlanCounts counts;
};

PlanInfo read_plan_json(const std::filesystem::path& path);

} // namespace sweep
