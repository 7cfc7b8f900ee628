#pragma once

#include "sweep/epimodel.hpp"
#include "sweep/plan.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace sweep {

/// Runs tasks in-process with the reference model.
struct BuiltinAdapter {
    EpidemicParams params;          // template; swept values override by name
    bool stop_on_extinction = true;
};

/// Delegates a whole chunk to an external simulator command. The template
/// must contain the placeholders {xml} and {outdir}; the command must exit 0
/// and write `task-<id>.csv` per the trajectory schema for every task of
/// the chunk.
struct ExternalAdapter {
    std::string command_template;
};

struct SimulatorAdapter {
    std::variant<BuiltinAdapter, ExternalAdapter> kind;

    static SimulatorAdapter builtin(EpidemicParams params,
                                    bool stop_on_extinction = true);
    /// Throws ConfigError when a placeholder is missing.
    static SimulatorAdapter external(std::string command_template);
};

struct TaskFailure {
    std::int64_t task_id = 0;
    std::string reason;
};

struct RunReport {
    std::int64_t tasks_total = 0;
    std::int64_t tasks_succeeded = 0;
    std::int64_t tasks_failed = 0;
    std::vector<TaskFailure> failures;
    std::chrono::milliseconds wall_clock{0};
};

/// Task ids of the plan that have no complete, parseable trajectory CSV in
/// out_dir. A CSV is complete when it parses, covers steps 0..finalStep, or
/// — with stopOnExtinction — ends early on a row with no visibly active
/// agents.
std::vector<std::int64_t> resume(const ExperimentPlan& plan,
                                 const std::filesystem::path& out_dir);

/// Executes every pending task of the plan with at most `workers` in
/// flight, one trajectory CSV per task in out_dir (written atomically).
/// Builtin adapters parallelize across tasks; external adapters are invoked
/// once per chunk holding pending work. A failing task is retried once,
/// then recorded; it never aborts the run. The resulting file set is
/// independent of worker count and scheduling order.
RunReport run_local(const ExperimentPlan& plan, const SimulatorAdapter& adapter,
                    int workers, const std::filesystem::path& out_dir);

/// Executes the pending tasks of one parsed chunk (builtin adapters only;
/// external adapters receive whole chunk files through run_local).
RunReport run_chunk(const Chunk& chunk, const BuiltinAdapter& adapter, int workers,
                    const std::filesystem::path& out_dir);

} // namespace sweep
