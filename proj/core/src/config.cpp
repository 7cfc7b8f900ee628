#include "sweep/config.hpp"

#include "sweep/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace sweep {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& reason) {
    throw ConfigError(path + ": " + reason);
}

std::int64_t as_int(const json& value, const std::string& path) {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        bad_field(path, "expected an integer");
    }
    return value.get<std::int64_t>();
}

std::uint64_t as_uint(const json& value, const std::string& path) {
    const std::int64_t v = as_int(value, path);
    if (v < 0) {
        bad_field(path, "must be >= 0");
    }
    return static_cast<std::uint64_t>(v);
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) {
        bad_field(path, "expected a number");
    }
    return value.get<double>();
}

bool as_bool(const json& value, const std::string& path) {
    if (!value.is_boolean()) {
        bad_field(path, "expected a boolean");
    }
    return value.get<bool>();
}

std::string as_string(const json& value, const std::string& path) {
    if (!value.is_string()) {
        bad_field(path, "expected a string");
    }
    return value.get<std::string>();
}

void parse_exploration(const json& section, ExplorationConfig& config) {
    for (const auto& [key, value] : section.items()) {
        const std::string path = "exploration." + key;
        if (key == "experimentName") {
            config.experiment_name = as_string(value, path);
        } else if (key == "modelSource") {
            config.model_source = as_string(value, path);
        } else if (key == "replications") {
            config.replications = as_int(value, path);
        } else if (key == "finalStep") {
            config.final_step = as_int(value, path);
        } else if (key == "startSeed") {
            config.start_seed = as_uint(value, path);
        } else if (key == "tasksPerChunk") {
            config.tasks_per_chunk = as_int(value, path);
        } else if (key == "stopOnExtinction") {
            config.stop_on_extinction = as_bool(value, path);
        } else {
            bad_field(path, "unknown field");
        }
    }
}

ParameterSpec parse_parameter(const json& entry, const std::string& path) {
    if (!entry.is_object()) {
        bad_field(path, "expected an object");
    }
    std::string name;
    bool has_min = false, has_max = false, has_count = false, has_values = false;
    double min = 0.0, max = 0.0;
    std::int64_t count = 0;
    std::vector<double> values;
    for (const auto& [key, value] : entry.items()) {
        const std::string field = path + "." + key;
        if (key == "name") {
            name = as_string(value, field);
        } else if (key == "min") {
            min = as_number(value, field);
            has_min = true;
        } else if (key == "max") {
            max = as_number(value, field);
            has_max = true;
        } else if (key == "count") {
            count = as_int(value, field);
            has_count = true;
        } else if (key == "values") {
            if (!value.is_array()) {
                bad_field(field, "expected an array of numbers");
            }
            for (const auto& v : value) {
                values.push_back(as_number(v, field));
            }
            has_values = true;
        } else {
            bad_field(field, "unknown field");
        }
    }
    if (name.empty()) {
        bad_field(path + ".name", "required");
    }
    const bool continuous = has_min || has_max || has_count;
    if (continuous && has_values) {
        bad_field(path, "use either min/max/count or values, not both");
    }
    try {
        if (has_values) {
            return ParameterSpec::discrete(name, std::move(values));
        }
        if (!has_min || !has_max || !has_count) {
            bad_field(path, "continuous parameter needs min, max and count");
        }
        return ParameterSpec::continuous(name, min, max, count);
    } catch (const PlanError& e) {
        bad_field(path, e.what());
    }
}

void parse_model(const json& section, EpidemicParams& model) {
    for (const auto& [key, value] : section.items()) {
        const std::string path = "model." + key;
        if (key == "basic_viral_release") {
            model.basic_viral_release = as_number(value, path);
        } else if (key == "basic_viral_decrease") {
            model.basic_viral_decrease = as_number(value, path);
        } else if (key == "directTransmissionProb") {
            model.direct_transmission_prob = as_number(value, path);
        } else if (key == "envInfectionFactor") {
            model.env_infection_factor = as_number(value, path);
        } else if (key == "population") {
            model.population = as_int(value, path);
        } else if (key == "nBuildings") {
            model.n_buildings = as_int(value, path);
        } else if (key == "initialInfected") {
            model.initial_infected = as_int(value, path);
        } else if (key == "pAsymptomatic") {
            model.p_asymptomatic = as_number(value, path);
        } else if (key == "pHospitalize") {
            model.p_hospitalize = as_number(value, path);
        } else if (key == "pIcu") {
            model.p_icu = as_number(value, path);
        } else if (key == "pDie") {
            model.p_die = as_number(value, path);
        } else if (key == "stageHours") {
            if (!value.is_object()) {
                bad_field(path, "expected an object");
            }
            for (const auto& [stage, hours] : value.items()) {
                const std::string stage_path = path + "." + stage;
                if (stage == "latent") {
                    model.stage_hours.latent = as_int(hours, stage_path);
                } else if (stage == "presymptomatic") {
                    model.stage_hours.presymptomatic = as_int(hours, stage_path);
                } else if (stage == "infectious") {
                    model.stage_hours.infectious = as_int(hours, stage_path);
                } else if (stage == "hospital") {
                    model.stage_hours.hospital = as_int(hours, stage_path);
                } else if (stage == "icu") {
                    model.stage_hours.icu = as_int(hours, stage_path);
                } else {
                    bad_field(stage_path, "unknown field");
                }
            }
        } else {
            bad_field(path, "unknown field");
        }
    }
}

void parse_slurm(const json& section, SlurmConfig& slurm) {
    for (const auto& [key, value] : section.items()) {
        const std::string path = "slurm." + key;
        if (key == "jobTimeoutHours") {
            slurm.job_timeout_hours = as_int(value, path);
        } else if (key == "coresPerNode") {
            slurm.cores_per_node = as_int(value, path);
        } else if (key == "nodes") {
            slurm.nodes = as_int(value, path);
        } else if (key == "maxSubmission") {
            slurm.max_submission = as_int(value, path);
        } else if (key == "jobName") {
            slurm.job_name = as_string(value, path);
        } else if (key == "extraDirectives") {
            if (!value.is_array()) {
                bad_field(path, "expected an array of strings");
            }
            slurm.extra_directives.clear();
            for (const auto& directive : value) {
                slurm.extra_directives.push_back(as_string(directive, path));
            }
        } else {
            bad_field(path, "unknown field");
        }
    }
}

SweepConfig parse_document(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) {
        throw ConfigError("config root: expected a JSON object");
    }
    SweepConfig config;
    bool job_name_set = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "exploration") {
            parse_exploration(value, config.exploration);
        } else if (key == "parameters") {
            if (!value.is_array()) {
                bad_field("parameters", "expected an array");
            }
            std::size_t i = 0;
            for (const auto& entry : value) {
                config.parameters.push_back(
                    parse_parameter(entry, "parameters[" + std::to_string(i) + "]"));
                ++i;
            }
        } else if (key == "model") {
            parse_model(value, config.model);
        } else if (key == "slurm") {
            parse_slurm(value, config.slurm);
            job_name_set = value.contains("jobName");
        } else if (key == "counts") {
            // produced by write_plan_json; ignored here, read by read_plan_json
        } else {
            bad_field(key, "unknown section");
        }
    }

    if (!job_name_set) {
        config.slurm.job_name = config.exploration.experiment_name;
    }
    if (config.exploration.model_source != "builtin" &&
        std::filesystem::path(config.exploration.model_source).is_relative()) {
        config.exploration.model_source =
            (base_dir / config.exploration.model_source).lexically_normal().string();
    }

    config.exploration.validate();
    config.model.validate();
    config.slurm.validate();
    // surfaces duplicate names and domain problems before any plan is built
    std::vector<ParameterSpec> specs = config.parameters;
    try {
        build_plan(config.exploration, std::move(specs));
    } catch (const PlanError& e) {
        throw ConfigError(std::string("parameters: ") + e.what());
    }
    return config;
}

json dump_parameters(const std::vector<ParameterSpec>& parameters) {
    json list = json::array();
    for (const ParameterSpec& spec : parameters) {
        json entry;
        entry["name"] = spec.name;
        if (const auto* c = std::get_if<ContinuousDomain>(&spec.domain)) {
            entry["min"] = c->min;
            entry["max"] = c->max;
            entry["count"] = c->count;
        } else {
            entry["values"] = std::get<DiscreteDomain>(spec.domain).values;
        }
        list.push_back(entry);
    }
    return list;
}

} // namespace

SweepConfig parse_config(const std::string& text,
                         const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_document(doc, base_dir);
}

SweepConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + file.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), file.parent_path());
}

void write_plan_json(const SweepConfig& config, const PlanCounts& counts,
                     const std::filesystem::path& path) {
    json doc;
    doc["exploration"] = {
        {"experimentName", config.exploration.experiment_name},
        {"modelSource", config.exploration.model_source},
        {"replications", config.exploration.replications},
        {"finalStep", config.exploration.final_step},
        {"startSeed", config.exploration.start_seed},
        {"tasksPerChunk", config.exploration.tasks_per_chunk},
        {"stopOnExtinction", config.exploration.stop_on_extinction},
    };
    doc["parameters"] = dump_parameters(config.parameters);
    doc["model"] = {
        {"basic_viral_release", config.model.basic_viral_release},
        {"basic_viral_decrease", config.model.basic_viral_decrease},
        {"directTransmissionProb", config.model.direct_transmission_prob},
        {"envInfectionFactor", config.model.env_infection_factor},
        {"population", config.model.population},
        {"nBuildings", config.model.n_buildings},
        {"initialInfected", config.model.initial_infected},
        {"stageHours",
         {
             {"latent", config.model.stage_hours.latent},
             {"presymptomatic", config.model.stage_hours.presymptomatic},
             {"infectious", config.model.stage_hours.infectious},
             {"hospital", config.model.stage_hours.hospital},
             {"icu", config.model.stage_hours.icu},
         }},
        {"pAsymptomatic", config.model.p_asymptomatic},
        {"pHospitalize", config.model.p_hospitalize},
        {"pIcu", config.model.p_icu},
        {"pDie", config.model.p_die},
    };
    doc["slurm"] = {
        {"jobTimeoutHours", config.slurm.job_timeout_hours},
        {"coresPerNode", config.slurm.cores_per_node},
        {"nodes", config.slurm.nodes},
        {"maxSubmission", config.slurm.max_submission},
        {"jobName", config.slurm.job_name},
        {"extraDirectives", config.slurm.extra_directives},
    };
    doc["counts"] = {
        {"points", counts.points},
        {"tasks", counts.tasks},
        {"chunks", counts.chunks},
    };

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

PlanInfo read_plan_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("no plan found: cannot open '" + path.string() +
                          "' (run the plan command first)");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("plan.json is not valid JSON: " + std::string(e.what()));
    }
    PlanInfo info;
    info.config = parse_document(doc, path.parent_path());
    if (doc.contains("counts")) {
        const json& counts = doc["counts"];
        info.counts.points = as_int(counts.value("points", json(0)), "counts.points");
        info.counts.tasks = as_int(counts.value("tasks", json(0)), "counts.tasks");
        info.counts.chunks = as_int(counts.value("chunks", json(0)), "counts.chunks");
    }
    return info;
}

} // namespace sweep
