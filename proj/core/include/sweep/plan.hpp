#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sweep {

/// Evenly spaced values over [min, max], both endpoints included.
struct ContinuousDomain {
    double min = 0.0;
    double max = 0.0;
    std::int64_t count = 1;
    bool operator==(const ContinuousDomain&) const = default;
};

/// Explicit list of values, kept in declaration order.
struct DiscreteDomain {
    std::vector<double> values;
    bool operator==(const DiscreteDomain&) const = default;
};

/// One swept parameter: a name plus its value domain. Use the factory
/// functions; they reject invalid domains up front.
struct ParameterSpec {
    std::string name;
    std::variant<ContinuousDomain, DiscreteDomain> domain;

    static ParameterSpec continuous(std::string name, double min, double max,
                                    std::int64_t count);
    static ParameterSpec discrete(std::string name, std::vector<double> values);

    std::int64_t cardinality() const;
    bool operator==(const ParameterSpec&) const = default;
};

/// Values of a spec in enumeration order. Continuous domains are computed
/// by index, v_i = min + i*(max-min)/(count-1), with the endpoints returned
/// exactly; repeated addition would drift.
std::vector<double> enumerate_values(const ParameterSpec& spec);

/// Exploration-wide settings shared by every task.
struct ExplorationConfig {
    std::string experiment_name = "experiment";
    std::string model_source = "builtin";
    std::int64_t replications = 1;
    std::int64_t final_step = 1;
    std::uint64_t start_seed = 0;
    std::int64_t tasks_per_chunk = 8;
    bool stop_on_extinction = true;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    bool operator==(const ExplorationConfig&) const = default;
};

/// Parameter-name -> value pairs, ordered by spec declaration.
using Assignment = std::vector<std::pair<std::string, double>>;

/// One simulation to execute. taskId is global, dense and 0-based:
/// taskId = pointIndex * replications + replicationIndex, and
/// seed = startSeed + replicationIndex (the same seed sequence is reused
/// at every point, so replication r is seed-paired across the grid).
struct SimulationTask {
    std::int64_t task_id = 0;
    std::int64_t point_index = 0;
    std::int64_t replication_index = 0;
    Assignment assignment;
    std::uint64_t seed = 0;
    std::int64_t final_step = 1;
    bool operator==(const SimulationTask&) const = default;
};

/// The full cartesian product x replications, tasks ordered by taskId.
/// Point enumeration is row-major over specs in declaration order (the
/// last spec varies fastest).
struct ExperimentPlan {
    ExplorationConfig config;
    std::vector<ParameterSpec> specs;
    std::vector<SimulationTask> tasks;

    std::int64_t point_count() const;
};

/// Builds the plan deterministically. Throws PlanError on duplicate
/// parameter names.
ExperimentPlan build_plan(const ExplorationConfig& config,
                          std::vector<ParameterSpec> specs);

/// Contiguous slice of the plan's task list.
struct Chunk {
    std::int64_t chunk_id = 0;
    std::vector<SimulationTask> tasks;
    bool operator==(const Chunk&) const = default;
};

/// Splits the task list into ceil(|tasks| / tasksPerChunk) chunks whose
/// concatenation equals the task list. Throws PlanError on an empty plan.
std::vector<Chunk> chunk_plan(const ExperimentPlan& plan);

} // namespace sweep
