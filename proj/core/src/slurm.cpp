#include "sweep/slurm.hpp"

#include "sweep/errors.hpp"
#include "sweep/process.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sweep {

namespace {

void check_counter(std::int64_t value, const char* field) {
    if (value < 1) {
        throw ConfigError(std::string("slurm.") + field + ": must be >= 1");
    }
}

std::string substitute_all(std::string text, const std::string& placeholder,
                           const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(placeholder, pos)) != std::string::npos) {
        text.replace(pos, placeholder.size(), value);
        pos += value.size();
    }
    return text;
}

// Command an array task executes once its chunk XML is resolved. Builtin
// plans go back through the sweep CLI, which must be on PATH on the
// cluster; external templates are taken verbatim.
std::string chunk_command(const SimulatorAdapter& adapter,
                          const std::filesystem::path& out_dir) {
    if (std::holds_alternative<BuiltinAdapter>(adapter.kind)) {
        return "sweep run --out \"" + out_dir.string() +
               "\" --chunk \"$chunk_xml\" --workers \"${SLURM_CPUS_PER_TASK:-1}\"";
    }
    const auto& external = std::get<ExternalAdapter>(adapter.kind);
    std::string command =
        substitute_all(external.command_template, "{xml}", "\"$chunk_xml\"");
    return substitute_all(command, "{outdir}", out_dir.string());
}

} // namespace

void SlurmConfig::validate() const {
    check_counter(job_timeout_hours, "jobTimeoutHours");
    check_counter(cores_per_node, "coresPerNode");
    check_counter(nodes, "nodes");
    check_counter(max_submission, "maxSubmission");
    if (job_name.empty()) {
        throw ConfigError("slurm.jobName: must be non-empty");
    }
}

std::string format_time_limit(std::int64_t hours) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02lld:00:00", static_cast<long long>(hours));
    return buf;
}

std::string sbatch_script(std::size_t chunk_count, const SlurmConfig& config,
                          const SimulatorAdapter& adapter,
                          const std::filesystem::path& out_dir) {
    config.validate();
    if (chunk_count == 0) {
        throw PlanError("cannot generate a batch script for zero chunks");
    }
    std::ostringstream script;
    script << "#!/bin/bash\n";
    script << "#SBATCH --job-name=" << config.job_name << "\n";
    script << "#SBATCH --array=0-" << chunk_count - 1 << "%" << config.max_submission
           << "\n";
    script << "#SBATCH --time=" << format_time_limit(config.job_timeout_hours) << "\n";
    script << "#SBATCH --nodes=" << config.nodes << "\n";
    script << "#SBATCH --cpus-per-task=" << config.cores_per_node << "\n";
    script << "#SBATCH --output=logs/%A_%a.out\n";
    for (const std::string& directive : config.extra_directives) {
        script << directive << "\n";
    }
    script << "\n";
    script << "set -eu\n";
    script << "manifest=\"$(dirname \"$0\")/chunks.manifest\"\n";
    script << "chunk_xml=\"$(awk -F'\\t' -v id=\"$SLURM_ARRAY_TASK_ID\" "
              "'$1 == id { print $2 }' \"$manifest\")\"\n";
    script << "if [ -z \"$chunk_xml\" ]; then\n";
    script << "  echo \"no manifest entry for array index $SLURM_ARRAY_TASK_ID\" >&2\n";
    script << "  exit 1\n";
    script << "fi\n";
    script << chunk_command(adapter, out_dir) << "\n";
    return script.str();
}

SbatchFiles prepare_sbatch(std::span<const ChunkRef> chunks, const SlurmConfig& config,
                           const SimulatorAdapter& adapter,
                           const std::filesystem::path& out_dir) {
    config.validate();
    if (chunks.empty()) {
        throw PlanError("cannot prepare a SLURM submission for an empty chunk list");
    }
    std::error_code ec;
    std::filesystem::create_directories(config.work_dir / "logs", ec);
    if (ec) {
        throw IoError("cannot create '" + (config.work_dir / "logs").string() +
                      "': " + ec.message());
    }

    SbatchFiles files{config.work_dir / "job.sbatch",
                      config.work_dir / "chunks.manifest"};

    {
        std::ofstream manifest(files.manifest, std::ios::binary | std::ios::trunc);
        if (!manifest) {
            throw IoError("cannot open '" + files.manifest.string() +
                          "' for writing");
        }
        for (const ChunkRef& chunk : chunks) {
            manifest << chunk.chunk_id << '\t' << chunk.xml_path << '\n';
        }
        manifest.flush();
        if (!manifest) {
            throw IoError("failed writing '" + files.manifest.string() + "'");
        }
    }
    {
        std::ofstream script(files.script, std::ios::binary | std::ios::trunc);
        if (!script) {
            throw IoError("cannot open '" + files.script.string() + "' for writing");
        }
        script << sbatch_script(chunks.size(), config, adapter, out_dir);
        script.flush();
        if (!script) {
            throw IoError("failed writing '" + files.script.string() + "'");
        }
    }
    std::filesystem::permissions(files.script,
                                 std::filesystem::perms::owner_exec |
                                     std::filesystem::perms::group_exec,
                                 std::filesystem::perm_options::add, ec);
    return files;
}

std::string run_slurm(const std::filesystem::path& script) {
    if (!executable_on_path("sbatch")) {
        throw EnvironmentError("no 'sbatch' executable on PATH");
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(script, ec)) {
        throw IoError("sbatch script '" + script.string() + "' does not exist");
    }
    const auto dir = script.parent_path();
    const std::string command = "cd \"" + (dir.empty() ? "." : dir.string()) +
                                "\" && sbatch \"" + script.filename().string() + "\"";
    const CommandResult result = run_command(command);
    if (result.exit_code != 0) {
        throw SubmitError("sbatch exited " + std::to_string(result.exit_code) + ": " +
                          result.output);
    }
    // standard reply: "Submitted batch job <id>"
    static constexpr std::string_view prefix = "Submitted batch job ";
    std::istringstream lines(result.output);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind(prefix, 0) == 0) {
            std::string id = line.substr(prefix.size());
            while (!id.empty() && (id.back() == '\r' || id.back() == ' ')) {
                id.pop_back();
            }
            return id;
        }
    }
    std::string trimmed = result.output;
    while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r')) {
        trimmed.pop_back();
    }
    return trimmed;
}

} // namespace sweep
