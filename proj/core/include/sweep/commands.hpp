#pragma once

#include "sweep/aggregate.hpp"
#include "sweep/config.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace sweep {

/// Exit-code contract shared by every subcommand:
///   0 success, 1 task failures, 2 config error, 3 environment error,
///   4 incomplete data.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTaskFailures = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitEnvironment = 3;
inline constexpr int kExitIncompleteData = 4;

/// Generates chunk XMLs under <out>/chunks plus <out>/plan.json and prints
/// `points=<P> tasks=<T> chunks=<C>`.
int cmd_plan(const std::filesystem::path& config_file,
             const std::filesystem::path& out_dir, std::ostream& out,
             bool verbose = false);

/// Executes pending tasks of the planned sweep into <out>/results. The
/// adapter spec is "builtin" or an external command template containing
/// {xml} and {outdir}. With `chunk_xml` only that chunk is run (builtin
/// adapters only; batch scripts use this). Exit 0 iff no task failed.
int cmd_run(const std::filesystem::path& out_dir, int workers,
            const std::string& adapter_spec,
            const std::optional<std::filesystem::path>& chunk_xml, std::ostream& out,
            bool verbose = false);

/// Optional overrides of the planned slurm section.
struct SlurmOverrides {
    std::optional<std::int64_t> timeout_hours;
    std::optional<std::int64_t> cores_per_node;
    std::optional<std::int64_t> nodes;
    std::optional<std::int64_t> max_submission;
    std::optional<std::string> job_name;
};

/// Writes <out>/job.sbatch and <out>/chunks.manifest for the planned sweep.
int cmd_sbatch(const std::filesystem::path& out_dir, const SlurmOverrides& overrides,
               const std::string& adapter_spec, std::ostream& out,
               bool verbose = false);

/// Submits <out>/job.sbatch and prints the job id.
int cmd_submit(const std::filesystem::path& out_dir, std::ostream& out,
               bool verbose = false);

/// Aggregates <out>/results into per-point summary CSVs and SVGs plus, for
/// two-parameter sweeps, a grid CSV and heatmap for the chosen indicator,
/// all under <out>/report. Exits 4 when task outputs are missing.
int cmd_report(const std::filesystem::path& out_dir, GridIndicator indicator,
               std::ostream& out, bool verbose = false);

} // namespace sweep
