#include "sweep/runner.hpp"

#include "sweep/errors.hpp"
#include "sweep/plan_xml.hpp"
#include "sweep/process.hpp"
#include "sweep/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace sweep {

namespace {

bool has_placeholder(const std::string& text, const std::string& placeholder) {
    return text.find(placeholder) != std::string::npos;
}

void validate_external(const ExternalAdapter& adapter) {
    if (!has_placeholder(adapter.command_template, "{xml}")) {
        throw ConfigError("external adapter command is missing the {xml} placeholder");
    }
    if (!has_placeholder(adapter.command_template, "{outdir}")) {
        throw ConfigError(
            "external adapter command is missing the {outdir} placeholder");
    }
}

std::string substitute(std::string text, const std::string& placeholder,
                       const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(placeholder, pos)) != std::string::npos) {
        text.replace(pos, placeholder.size(), value);
        pos += value.size();
    }
    return text;
}

// A trajectory CSV counts as complete when it parses and either covers the
// full step range or — when extinction may stop runs early — ends on a row
// with no visibly active agents.
bool task_output_complete(const SimulationTask& task, bool stop_on_extinction,
                          const std::filesystem::path& out_dir) {
    Trajectory trajectory;
    try {
        trajectory = read_trajectory_csv(task_csv_path(out_dir, task.task_id));
    } catch (const Error&) {
        return false;
    }
    const auto expected = static_cast<std::size_t>(task.final_step) + 1;
    if (trajectory.steps.size() == expected) {
        return true;
    }
    if (!stop_on_extinction || trajectory.steps.size() > expected) {
        return false;
    }
    const StepCounts& last = trajectory.steps.back();
    const std::int64_t visibly_active =
        last[static_cast<std::size_t>(Indicator::Presymptomatic)] +
        last[static_cast<std::size_t>(Indicator::Asymptomatic)] +
        last[static_cast<std::size_t>(Indicator::Symptomatic)] +
        last[static_cast<std::size_t>(Indicator::Hospitalized)] +
        last[static_cast<std::size_t>(Indicator::Icu)];
    return visibly_active == 0;
}

void run_builtin_task(const SimulationTask& task, const BuiltinAdapter& adapter,
                      const std::filesystem::path& out_dir) {
    EpidemicParams params = adapter.params;
    apply_assignment(params, task.assignment);
    Trajectory trajectory = run_simulation(params, task.seed, task.final_step,
                                           adapter.stop_on_extinction);
    trajectory.task_id = task.task_id;
    write_trajectory_csv(trajectory, task_csv_path(out_dir, task.task_id));
}

// Index-fed worker pool; item results land in caller-owned slots, so the
// only shared state is the feed counter.
template <typename Fn>
void parallel_for(std::size_t items, int workers, Fn&& fn) {
    if (items == 0) {
        return;
    }
    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(items)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= items) {
                return;
            }
            fn(index);
        }
    };
    if (n_threads == 1) {
        worker();
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) {
        threads.emplace_back(worker);
    }
    for (auto& thread : threads) {
        thread.join();
    }
}

RunReport run_builtin_tasks(const std::vector<SimulationTask>& tasks,
                            const BuiltinAdapter& adapter, int workers,
                            const std::filesystem::path& out_dir) {
    RunReport report;
    report.tasks_total = static_cast<std::int64_t>(tasks.size());
    std::vector<std::string> errors(tasks.size());

    parallel_for(tasks.size(), workers, [&](std::size_t index) {
        for (int attempt = 0; attempt < 2; ++attempt) {
            try {
                run_builtin_task(tasks[index], adapter, out_dir);
                errors[index].clear();
                return;
            } catch (const std::exception& e) {
                errors[index] = e.what();
            }
        }
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (errors[i].empty()) {
            ++report.tasks_succeeded;
        } else {
            ++report.tasks_failed;
            report.failures.push_back({tasks[i].task_id, errors[i]});
        }
    }
    return report;
}

RunReport run_external_chunks(const ExperimentPlan& plan,
                              const ExternalAdapter& adapter, int workers,
                              const std::filesystem::path& out_dir) {
    validate_external(adapter);
    const bool stop = plan.config.stop_on_extinction;
    const auto chunks = chunk_plan(plan);
    const auto chunk_dir = out_dir / "chunks";

    struct PendingChunk {
        const Chunk* chunk;
        std::vector<const SimulationTask*> pending;
    };
    std::vector<PendingChunk> work;
    for (const Chunk& chunk : chunks) {
        PendingChunk item{&chunk, {}};
        for (const SimulationTask& task : chunk.tasks) {
            if (!task_output_complete(task, stop, out_dir)) {
                item.pending.push_back(&task);
            }
        }
        if (!item.pending.empty()) {
            work.push_back(std::move(item));
        }
    }

    RunReport report;
    for (const auto& item : work) {
        report.tasks_total += static_cast<std::int64_t>(item.pending.size());
    }

    std::vector<std::vector<TaskFailure>> failures(work.size());
    parallel_for(work.size(), workers, [&](std::size_t index) {
        const PendingChunk& item = work[index];
        const auto xml = write_chunk_xml(*item.chunk, plan.config, chunk_dir);
        std::string command = substitute(adapter.command_template, "{xml}",
                                         std::filesystem::absolute(xml).string());
        command = substitute(command, "{outdir}",
                             std::filesystem::absolute(out_dir).string());

        CommandResult result{0, {}};
        for (int attempt = 0; attempt < 2; ++attempt) {
            result = run_command(command);
            bool all_done = true;
            for (const SimulationTask* task : item.pending) {
                all_done = all_done && task_output_complete(*task, stop, out_dir);
            }
            if (all_done) {
                break;
            }
        }
        for (const SimulationTask* task : item.pending) {
            if (!task_output_complete(*task, stop, out_dir)) {
                std::string reason = "chunk " + std::to_string(item.chunk->chunk_id) +
                                     " command exited " +
                                     std::to_string(result.exit_code);
                if (!result.output.empty()) {
                    reason += ": " + result.output.substr(0, 200);
                }
                failures[index].push_back({task->task_id, std::move(reason)});
            }
        }
    });

    for (auto& chunk_failures : failures) {
        for (auto& failure : chunk_failures) {
            ++report.tasks_failed;
            report.failures.push_back(std::move(failure));
        }
    }
    report.tasks_succeeded = report.tasks_total - report.tasks_failed;
    return report;
}

void prepare_out_dir(const std::filesystem::path& out_dir) {
    if (out_dir.empty()) {
        throw IoError("output directory path is empty");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory '" + out_dir.string() + "'");
    }
}

} // namespace

SimulatorAdapter SimulatorAdapter::builtin(EpidemicParams params,
                                           bool stop_on_extinction) {
    params.validate();
    return SimulatorAdapter{BuiltinAdapter{std::move(params), stop_on_extinction}};
}

SimulatorAdapter SimulatorAdapter::external(std::string command_template) {
    ExternalAdapter adapter{std::move(command_template)};
    validate_external(adapter);
    return SimulatorAdapter{std::move(adapter)};
}

std::vector<std::int64_t> resume(const ExperimentPlan& plan,
                                 const std::filesystem::path& out_dir) {
    std::vector<std::int64_t> pending;
    for (const SimulationTask& task : plan.tasks) {
        if (!task_output_complete(task, plan.config.stop_on_extinction, out_dir)) {
            pending.push_back(task.task_id);
        }
    }
    return pending;
}

RunReport run_local(const ExperimentPlan& plan, const SimulatorAdapter& adapter,
                    int workers, const std::filesystem::path& out_dir) {
    if (workers < 1) {
        throw ConfigError("workers: must be >= 1");
    }
    prepare_out_dir(out_dir);
    const auto started = std::chrono::steady_clock::now();

    RunReport report;
    if (const auto* builtin = std::get_if<BuiltinAdapter>(&adapter.kind)) {
        std::vector<SimulationTask> pending;
        for (const SimulationTask& task : plan.tasks) {
            if (!task_output_complete(task, builtin->stop_on_extinction, out_dir)) {
                pending.push_back(task);
            }
        }
        report = run_builtin_tasks(pending, *builtin, workers, out_dir);
    } else {
        report = run_external_chunks(plan, std::get<ExternalAdapter>(adapter.kind),
                                     workers, out_dir);
    }
    report.wall_clock = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    return report;
}

RunReport run_chunk(const Chunk& chunk, const BuiltinAdapter& adapter, int workers,
                    const std::filesystem::path& out_dir) {
    if (workers < 1) {
        throw ConfigError("workers: must be >= 1");
    }
    prepare_out_dir(out_dir);
    const auto started = std::chrono::steady_clock::now();

    std::vector<SimulationTask> pending;
    for (const SimulationTask& task : chunk.tasks) {
        if (!task_output_complete(task, adapter.stop_on_extinction, out_dir)) {
            pending.push_back(task);
        }
    }
    RunReport report = run_builtin_tasks(pending, adapter, workers, out_dir);
    report.wall_clock = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    return report;
}

} // namespace sweep
