#pragma once

#include "sweep/runner.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sweep {

struct SlurmConfig {
    std::int64_t job_timeout_hours = 1;
    std::int64_t cores_per_node = 1;
    std::int64_t nodes = 1;
    std::int64_t max_submission = 1;
    std::string job_name = "sweep";
    std::filesystem::path work_dir = ".";
    std::vector<std::string> extra_directives; // appended verbatim to the header

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// One chunk the batch script must dispatch.
struct ChunkRef {
    std::int64_t chunk_id = 0;
    std::string xml_path; // as recorded in the manifest
};

struct SbatchFiles {
    std::filesystem::path script;   // job.sbatch
    std::filesystem::path manifest; // chunks.manifest
};

/// `HH:00:00`, zero-padded to two digits.
std::string format_time_limit(std::int64_t hours);

/// The generated array-job script, one array task per chunk with the
/// concurrency throttle `%maxSubmission`. Exposed for inspection; the
/// script resolves its chunk via the manifest and $SLURM_ARRAY_TASK_ID.
std::string sbatch_script(std::size_t chunk_count, const SlurmConfig& config,
                          const SimulatorAdapter& adapter,
                          const std::filesystem::path& out_dir);

/// Writes `chunks.manifest` (chunkId TAB xml-path, LF endings) and
/// `job.sbatch` into config.workDir, plus the logs/ directory the script's
/// output pattern points at. Pure generation: no scheduler interaction;
/// byte-deterministic output. Throws PlanError on an empty chunk list.
SbatchFiles prepare_sbatch(std::span<const ChunkRef> chunks, const SlurmConfig& config,
                           const SimulatorAdapter& adapter,
                           const std::filesystem::path& out_dir);

/// Submits the generated script with `sbatch` and returns the job id from
/// its "Submitted batch job <id>" reply. Throws EnvironmentError when no
/// sbatch executable is on PATH, SubmitError (with captured diagnostics)
/// when submission fails.
std::string run_slurm(const std::filesystem::path& script);

} // namespace sweep
