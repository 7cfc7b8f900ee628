#include "sweep/plan.hpp"

#include "sweep/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace sweep {

ParameterSpec ParameterSpec::continuous(std::string name, double min, double max,
                                        std::int64_t count) {
    if (name.empty()) {
        throw PlanError("parameter name must be non-empty");
    }
    if (!(min <= max)) {
        throw PlanError("parameter '" + name + "': min must be <= max");
    }
    if (count < 1) {
        throw PlanError("parameter '" + name + "': count must be >= 1");
    }
    return ParameterSpec{std::move(name), ContinuousDomain{min, max, count}};
}

ParameterSpec ParameterSpec::discrete(std::string name, std::vector<double> values) {
    if (name.empty()) {
        throw PlanError("parameter name must be non-empty");
    }
    if (values.empty()) {
        throw PlanError("parameter '" + name + "': discrete domain must be non-empty");
    }
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw PlanError("parameter '" + name + "': discrete values must be unique");
    }
    return ParameterSpec{std::move(name), DiscreteDomain{std::move(values)}};
}

std::int64_t ParameterSpec::cardinality() const {
    if (const auto* c = std::get_if<ContinuousDomain>(&domain)) {
        return c->count;
    }
    return static_cast<std::int64_t>(std::get<DiscreteDomain>(domain).values.size());
}

std::vector<double> enumerate_values(const ParameterSpec& spec) {
    if (const auto* d = std::get_if<DiscreteDomain>(&spec.domain)) {
        return d->values;
    }
    const auto& c = std::get<ContinuousDomain>(spec.domain);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(c.count));
    for (std::int64_t i = 0; i < c.count; ++i) {
        if (i == 0) {
            values.push_back(c.min);
        } else if (i == c.count - 1) {
            values.push_back(c.max); // exact endpoint, not recomputed
        } else {
            values.push_back(c.min + static_cast<double>(i) * (c.max - c.min) /
                                         static_cast<double>(c.count - 1));
        }
    }
    return values;
}

void ExplorationConfig::validate() const {
    if (experiment_name.empty()) {
        throw ConfigError("exploration.experimentName: must be non-empty");
    }
    if (model_source.empty()) {
        throw ConfigError("exploration.modelSource: must be non-empty");
    }
    if (replications < 1) {
        throw ConfigError("exploration.replications: must be >= 1");
    }
    if (final_step < 1) {
        throw ConfigError("exploration.finalStep: must be >= 1");
    }
    if (tasks_per_chunk < 1) {
        throw ConfigError("exploration.tasksPerChunk: must be >= 1");
    }
}

std::int64_t ExperimentPlan::point_count() const {
    std::int64_t points = 1;
    for (const auto& spec : specs) {
        points *= spec.cardinality();
    }
    return points;
}

ExperimentPlan build_plan(const ExplorationConfig& config,
                          std::vector<ParameterSpec> specs) {
    config.validate();
    std::unordered_set<std::string> names;
    for (const auto& spec : specs) {
        if (!names.insert(spec.name).second) {
            throw PlanError("duplicate parameter name '" + spec.name + "'");
        }
    }

    std::vector<std::vector<double>> values;
    values.reserve(specs.size());
    std::int64_t points = 1;
    for (const auto& spec : specs) {
        values.push_back(enumerate_values(spec));
        points *= static_cast<std::int64_t>(values.back().size());
    }

    ExperimentPlan plan{config, std::move(specs), {}};
    plan.tasks.reserve(static_cast<std::size_t>(points * config.replications));

    // Row-major over spec declaration order: the last spec varies fastest.
    std::vector<std::size_t> index(plan.specs.size(), 0);
    for (std::int64_t point = 0; point < points; ++point) {
        Assignment assignment;
        assignment.reserve(plan.specs.size());
        for (std::size_t s = 0; s < plan.specs.size(); ++s) {
            assignment.emplace_back(plan.specs[s].name, values[s][index[s]]);
        }
        for (std::int64_t rep = 0; rep < config.replications; ++rep) {
            SimulationTask task;
            task.task_id = point * config.replications + rep;
            task.point_index = point;
            task.replication_index = rep;
            task.assignment = assignment;
            task.seed = config.start_seed + static_cast<std::uint64_t>(rep);
            task.final_step = config.final_step;
            plan.tasks.push_back(std::move(task));
        }
        for (std::size_t s = plan.specs.size(); s-- > 0;) {
            if (++index[s] < values[s].size()) {
                break;
            }
            index[s] = 0;
        }
    }
    return plan;
}

std::vector<Chunk> chunk_plan(const ExperimentPlan& plan) {
    if (plan.tasks.empty()) {
        throw PlanError("cannot chunk an empty plan");
    }
    const auto per_chunk = static_cast<std::size_t>(plan.config.tasks_per_chunk);
    std::vector<Chunk> chunks;
    chunks.reserve((plan.tasks.size() + per_chunk - 1) / per_chunk);
    for (std::size_t begin = 0; begin < plan.tasks.size(); begin += per_chunk) {
        const std::size_t end = std::min(begin + per_chunk, plan.tasks.size());
        Chunk chunk;
        chunk.chunk_id = static_cast<std::int64_t>(chunks.size());
        chunk.tasks.assign(plan.tasks.begin() + static_cast<std::ptrdiff_t>(begin),
                           plan.tasks.begin() + static_cast<std::ptrdiff_t>(end));
        chunks.push_back(std::move(chunk));
    }
    return chunks;
}

} // namespace sweep
