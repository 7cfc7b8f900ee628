#include "sweep/commands.hpp"

#include "sweep/errors.hpp"
#include "sweep/numeric.hpp"
#include "sweep/plan_xml.hpp"
#include "sweep/report.hpp"
#include "sweep/runner.hpp"
#include "sweep/slurm.hpp"

#include <algorithm>
#include <sstream>

namespace sweep {

namespace {

// Maps the error taxonomy onto the exit-code contract.
template <typename Fn>
int guarded(std::ostream& out, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        out << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const PlanError& e) {
        out << "plan error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const FormatError& e) {
        out << "format error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DataError& e) {
        out << "data error: " << e.what() << '\n';
        return kExitIncompleteData;
    } catch (const SubmitError& e) {
        out << "submit error: " << e.what() << '\n';
        return kExitEnvironment;
    } catch (const EnvironmentError& e) {
        out << "environment error: " << e.what() << '\n';
        return kExitEnvironment;
    } catch (const IoError& e) {
        out << "io error: " << e.what() << '\n';
        return kExitEnvironment;
    }
}

ExperimentPlan plan_from_out_dir(const std::filesystem::path& out_dir,
                                 SweepConfig& config) {
    PlanInfo info = read_plan_json(out_dir / "plan.json");
    config = std::move(info.config);
    return build_plan(config.exploration, config.parameters);
}

SimulatorAdapter make_adapter(const std::string& spec, const SweepConfig& config) {
    if (spec == "builtin") {
        return SimulatorAdapter::builtin(config.model,
                                         config.exploration.stop_on_extinction);
    }
    return SimulatorAdapter::external(spec);
}

std::string describe_assignment(const Assignment& assignment) {
    std::string text;
    for (const auto& [name, value] : assignment) {
        if (!text.empty()) {
            text += ", ";
        }
        text += name + "=" + format_double(value);
    }
    return text;
}

} // namespace

int cmd_plan(const std::filesystem::path& config_file,
             const std::filesystem::path& out_dir, std::ostream& out, bool verbose) {
    return guarded(out, [&] {
        const SweepConfig config = load_config(config_file);
        const ExperimentPlan plan = build_plan(config.exploration, config.parameters);
        const auto chunks = chunk_plan(plan);

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec || !std::filesystem::is_directory(out_dir)) {
            throw IoError("cannot create output directory '" + out_dir.string() + "'");
        }
        const auto chunk_dir = out_dir / "chunks";
        for (const Chunk& chunk : chunks) {
            write_chunk_xml(chunk, plan.config, chunk_dir);
        }
        const PlanCounts counts{plan.point_count(),
                                static_cast<std::int64_t>(plan.tasks.size()),
                                static_cast<std::int64_t>(chunks.size())};
        write_plan_json(config, counts, out_dir / "plan.json");

        if (verbose) {
            out << "wrote " << chunks.size() << " chunk files under "
                << chunk_dir.string() << '\n';
        }
        out << "points=" << counts.points << " tasks=" << counts.tasks
            << " chunks=" << counts.chunks << '\n';
        return kExitOk;
    });
}

int cmd_run(const std::filesystem::path& out_dir, int workers,
            const std::string& adapter_spec,
            const std::optional<std::filesystem::path>& chunk_xml, std::ostream& out,
            bool verbose) {
    return guarded(out, [&] {
        SweepConfig config;
        const ExperimentPlan plan = plan_from_out_dir(out_dir, config);
        const SimulatorAdapter adapter = make_adapter(adapter_spec, config);
        const auto results_dir = out_dir / "results";

        RunReport report;
        std::int64_t planned = 0;
        if (chunk_xml) {
            const auto* builtin = std::get_if<BuiltinAdapter>(&adapter.kind);
            if (builtin == nullptr) {
                throw ConfigError(
                    "--chunk runs use the builtin adapter; invoke external "
                    "commands on the chunk file directly");
            }
            const Chunk chunk =
                parse_chunk_xml(*chunk_xml, config.exploration.replications);
            planned = static_cast<std::int64_t>(chunk.tasks.size());
            report = run_chunk(chunk, *builtin, workers, results_dir);
        } else {
            planned = static_cast<std::int64_t>(plan.tasks.size());
            report = run_local(plan, adapter, workers, results_dir);
        }

        out << "tasks=" << planned << " executed=" << report.tasks_total
            << " succeeded=" << report.tasks_succeeded
            << " failed=" << report.tasks_failed
            << " skipped=" << planned - report.tasks_total << '\n';
        if (verbose) {
            out << "wall=" << report.wall_clock.count() << "ms workers=" << workers
                << '\n';
        }
        if (report.tasks_failed > 0) {
            const std::size_t shown = std::min<std::size_t>(report.failures.size(), 10);
            for (std::size_t i = 0; i < shown; ++i) {
                out << "task " << report.failures[i].task_id << " failed: "
                    << report.failures[i].reason << '\n';
            }
            if (report.failures.size() > shown) {
                out << "... and " << report.failures.size() - shown
                    << " more failures\n";
            }
            return kExitTaskFailures;
        }
        return kExitOk;
    });
}

int cmd_sbatch(const std::filesystem::path& out_dir, const SlurmOverrides& overrides,
               const std::string& adapter_spec, std::ostream& out, bool verbose) {
    return guarded(out, [&] {
        SweepConfig config;
        const ExperimentPlan plan = plan_from_out_dir(out_dir, config);
        const auto chunks = chunk_plan(plan);

        SlurmConfig slurm = config.slurm;
        slurm.work_dir = out_dir;
        if (overrides.timeout_hours) {
            slurm.job_timeout_hours = *overrides.timeout_hours;
        }
        if (overrides.cores_per_node) {
            slurm.cores_per_node = *overrides.cores_per_node;
        }
        if (overrides.nodes) {
            slurm.nodes = *overrides.nodes;
        }
        if (overrides.max_submission) {
            slurm.max_submission = *overrides.max_submission;
        }
        if (overrides.job_name) {
            slurm.job_name = *overrides.job_name;
        }

        std::vector<ChunkRef> refs;
        refs.reserve(chunks.size());
        for (const Chunk& chunk : chunks) {
            refs.push_back({chunk.chunk_id,
                            "chunks/plan-" + std::to_string(chunk.chunk_id) + ".xml"});
        }
        const SimulatorAdapter adapter = make_adapter(adapter_spec, config);
        const SbatchFiles files = prepare_sbatch(refs, slurm, adapter, out_dir);
        if (verbose) {
            out << "array=0-" << chunks.size() - 1 << "%" << slurm.max_submission
                << " time=" << format_time_limit(slurm.job_timeout_hours) << '\n';
        }
        out << "wrote " << files.script.string() << " and " << files.manifest.string()
            << '\n';
        return kExitOk;
    });
}

int cmd_submit(const std::filesystem::path& out_dir, std::ostream& out, bool verbose) {
    return guarded(out, [&] {
        const auto script = out_dir / "job.sbatch";
        const std::string job_id = run_slurm(script);
        if (verbose) {
            out << "submitted " << script.string() << '\n';
        }
        out << "job=" << job_id << '\n';
        return kExitOk;
    });
}

int cmd_report(const std::filesystem::path& out_dir, GridIndicator indicator,
               std::ostream& out, bool verbose) {
    return guarded(out, [&] {
        SweepConfig config;
        const ExperimentPlan plan = plan_from_out_dir(out_dir, config);
        const auto results_dir = out_dir / "results";

        const auto pending = resume(plan, results_dir);
        if (!pending.empty()) {
            std::ostringstream ids;
            const std::size_t shown = std::min<std::size_t>(pending.size(), 20);
            for (std::size_t i = 0; i < shown; ++i) {
                ids << (i ? " " : "") << pending[i];
            }
            if (pending.size() > shown) {
                ids << " ... (" << pending.size() << " total)";
            }
            throw DataError("missing or incomplete task outputs: " + ids.str());
        }

        const auto report_dir = out_dir / "report";
        std::error_code ec;
        std::filesystem::create_directories(report_dir, ec);
        if (ec || !std::filesystem::is_directory(report_dir)) {
            throw IoError("cannot create report directory '" + report_dir.string() +
                          "'");
        }

        const std::int64_t replications = config.exploration.replications;
        const std::int64_t points = plan.point_count();
        std::vector<PointSummary> scalars;
        scalars.reserve(static_cast<std::size_t>(points));

        // one point at a time keeps memory at O(replications x steps)
        for (std::int64_t point = 0; point < points; ++point) {
            std::vector<Trajectory> trajectories;
            trajectories.reserve(static_cast<std::size_t>(replications));
            for (std::int64_t rep = 0; rep < replications; ++rep) {
                const std::int64_t task_id = point * replications + rep;
                trajectories.push_back(
                    read_trajectory_csv(task_csv_path(results_dir, task_id)));
            }
            const PointKey key{
                point,
                plan.tasks[static_cast<std::size_t>(point * replications)].assignment};
            const ReplicationSummary summary =
                summarize_point(key, trajectories, replications);
            write_summary_csv(summary, report_dir / ("point-" + std::to_string(point) +
                                                     "-summary.csv"));
            std::string title = config.exploration.experiment_name + " point " +
                                std::to_string(point);
            const std::string assignment = describe_assignment(key.assignment);
            if (!assignment.empty()) {
                title += " (" + assignment + ")";
            }
            write_text_file(render_timeseries(summary, title),
                            report_dir / ("point-" + std::to_string(point) +
                                          "-timeseries.svg"));
            scalars.push_back(summarize_scalars(key, trajectories, replications));
            if (verbose) {
                out << "point " << point << ": " << trajectories.size()
                    << " replications summarized\n";
            }
        }

        bool grid_written = false;
        if (plan.specs.size() == 2) {
            const GridSummary grid =
                build_grid(scalars, plan.specs[0], plan.specs[1], indicator);
            const auto name = std::string(grid_indicator_name(indicator));
            write_grid_csv(grid, report_dir / ("grid-" + name + ".csv"));
            const std::string title = config.exploration.experiment_name +
                                      " median " + name + " per point";
            write_text_file(render_heatmap(grid, title),
                            report_dir / ("heatmap-" + name + ".svg"));
            grid_written = true;
        } else {
            out << "heatmap skipped: grids need exactly 2 swept parameters, plan has "
                << plan.specs.size() << '\n';
        }

        out << "summaries=" << points << " grids=" << (grid_written ? 1 : 0) << '\n';
        return kExitOk;
    });
}

} // namespace sweep
