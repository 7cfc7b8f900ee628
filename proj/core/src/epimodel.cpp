#include "sweep/epimodel.hpp"

#include "sweep/errors.hpp"

#include <cmath>
#include <string>

namespace sweep {

namespace {

void check_probability(double value, const char* field) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ConfigError(std::string("model.") + field + ": must be in [0,1]");
    }
}

void check_duration(std::int64_t value, const char* field) {
    if (value < 1) {
        throw ConfigError(std::string("model.") + field + ": must be >= 1 hour");
    }
}

bool is_infectious(AgentStatus s) {
    return s == AgentStatus::Presymptomatic || s == AgentStatus::Asymptomatic ||
           s == AgentStatus::Symptomatic;
}

bool is_active(AgentStatus s) {
    return s != AgentStatus::Susceptible && s != AgentStatus::Recovered &&
           s != AgentStatus::Dead;
}

// Building an agent occupies this hour, or -1 when out of circulation.
std::int32_t location_of(const Agent& agent, std::int64_t hour_of_day) {
    switch (agent.status) {
    case AgentStatus::Hospitalized:
    case AgentStatus::Icu:
    case AgentStatus::Dead:
        return -1;
    default:
        return (hour_of_day >= 8 && hour_of_day <= 17) ? agent.workplace
                                                       : agent.home;
    }
}

} // namespace

void EpidemicParams::validate() const {
    if (!(basic_viral_release >= 0.0)) {
        throw ConfigError("model.basic_viral_release: must be >= 0");
    }
    check_probability(basic_viral_decrease, "basic_viral_decrease");
    check_probability(direct_transmission_prob, "directTransmissionProb");
    if (!(env_infection_factor >= 0.0)) {
        throw ConfigError("model.envInfectionFactor: must be >= 0");
    }
    if (population < 1) {
        throw ConfigError("model.population: must be >= 1");
    }
    if (n_buildings < 1) {
        throw ConfigError("model.nBuildings: must be >= 1");
    }
    if (initial_infected < 0 || initial_infected > population) {
        throw ConfigError("model.initialInfected: must be in [0, population]");
    }
    check_duration(stage_hours.latent, "stageHours.latent");
    check_duration(stage_hours.presymptomatic, "stageHours.presymptomatic");
    check_duration(stage_hours.infectious, "stageHours.infectious");
    check_duration(stage_hours.hospital, "stageHours.hospital");
    check_duration(stage_hours.icu, "stageHours.icu");
    check_probability(p_asymptomatic, "pAsymptomatic");
    check_probability(p_hospitalize, "pHospitalize");
    check_probability(p_icu, "pIcu");
    check_probability(p_die, "pDie");
}

void apply_assignment(EpidemicParams& params, const Assignment& assignment) {
    for (const auto& [name, value] : assignment) {
        if (name == "basic_viral_release") {
            params.basic_viral_release = value;
        } else if (name == "basic_viral_decrease") {
            params.basic_viral_decrease = value;
        } else if (name == "directTransmissionProb") {
            params.direct_transmission_prob = value;
        } else if (name == "envInfectionFactor") {
            params.env_infection_factor = value;
        } else if (name == "population") {
            params.population = static_cast<std::int64_t>(value);
        } else if (name == "nBuildings") {
            params.n_buildings = static_cast<std::int64_t>(value);
        } else if (name == "initialInfected") {
            params.initial_infected = static_cast<std::int64_t>(value);
        } else if (name == "pAsymptomatic") {
            params.p_asymptomatic = value;
        } else if (name == "pHospitalize") {
            params.p_hospitalize = value;
        } else if (name == "pIcu") {
            params.p_icu = value;
        } else if (name == "pDie") {
            params.p_die = value;
        } else {
            throw ConfigError("unknown model parameter '" + name + "'");
        }
    }
    params.validate();
}

World init_world(const EpidemicParams& params, std::uint64_t seed) {
    params.validate();
    World world{params, 0, {}, {}, Rng(seed)};
    world.buildings.assign(static_cast<std::size_t>(params.n_buildings), Building{});
    world.agents.resize(static_cast<std::size_t>(params.population));
    const auto n_buildings = static_cast<std::uint64_t>(params.n_buildings);
    for (std::size_t id = 0; id < world.agents.size(); ++id) {
        Agent& agent = world.agents[id];
        agent.home = static_cast<std::int32_t>(world.rng.next_below(n_buildings));
        agent.workplace = static_cast<std::int32_t>(world.rng.next_below(n_buildings));
        if (static_cast<std::int64_t>(id) < params.initial_infected) {
            agent.status = AgentStatus::Latent;
            agent.stage_hours_left = params.stage_hours.latent;
        }
    }
    return world;
}

void step_hour(World& world) {
    const EpidemicParams& p = world.params;
    const std::int64_t hour_of_day = world.hour % 24;

    // 1. mobility
    std::vector<std::int32_t> location(world.agents.size());
    for (std::size_t id = 0; id < world.agents.size(); ++id) {
        location[id] = location_of(world.agents[id], hour_of_day);
    }

    // 2. release, and the per-building infectious counts phase 4 reads
    std::vector<std::int32_t> infectious_count(world.buildings.size(), 0);
    for (std::size_t id = 0; id < world.agents.size(); ++id) {
        if (is_infectious(world.agents[id].status) && location[id] >= 0) {
            world.buildings[static_cast<std::size_t>(location[id])].viral_load +=
                p.basic_viral_release;
            ++infectious_count[static_cast<std::size_t>(location[id])];
        }
    }

    // 3. environmental infection
    for (std::size_t id = 0; id < world.agents.size(); ++id) {
        Agent& agent = world.agents[id];
        if (agent.status != AgentStatus::Susceptible || location[id] < 0) {
            continue;
        }
        const double load =
            world.buildings[static_cast<std::size_t>(location[id])].viral_load;
        const double prob = std::min(1.0, p.env_infection_factor * load);
        if (world.rng.bernoulli(prob)) {
            agent.status = AgentStatus::Latent;
            agent.stage_hours_left = p.stage_hours.latent;
        }
    }

    // 4. direct infection
    for (std::size_t id = 0; id < world.agents.size(); ++id) {
        Agent& agent = world.agents[id];
        if (agent.status != AgentStatus::Susceptible || location[id] < 0) {
            continue;
        }
        const auto k = infectious_count[static_cast<std::size_t>(location[id])];
        const double prob =
            1.0 - std::pow(1.0 - p.direct_transmission_prob, static_cast<double>(k));
        if (world.rng.bernoulli(prob)) {
            agent.status = AgentStatus::Latent;
            agent.stage_hours_left = p.stage_hours.latent;
        }
    }

    // 5. decay
    const double retain = 1.0 - p.basic_viral_decrease;
    for (Building& building : world.buildings) {
        building.viral_load *= retain;
    }

    // 6. progression
    for (Agent& agent : world.agents) {
        if (!is_active(agent.status)) {
            continue;
        }
        if (--agent.stage_hours_left > 0) {
            continue;
        }
        switch (agent.status) {
        case AgentStatus::Latent:
            agent.status = AgentStatus::Presymptomatic;
            agent.stage_hours_left = p.stage_hours.presymptomatic;
            break;
        case AgentStatus::Presymptomatic:
            if (world.rng.bernoulli(p.p_asymptomatic)) {
                agent.status = AgentStatus::Asymptomatic;
            } else {
                agent.status = AgentStatus::Symptomatic;
            }
            agent.stage_hours_left = p.stage_hours.infectious;
            break;
        case AgentStatus::Asymptomatic:
            agent.status = AgentStatus::Recovered;
            agent.stage_hours_left = 0;
            break;
        case AgentStatus::Symptomatic:
            if (world.rng.bernoulli(p.p_hospitalize)) {
                agent.status = AgentStatus::Hospitalized;
                agent.stage_hours_left = p.stage_hours.hospital;
            } else {
                agent.status = AgentStatus::Recovered;
                agent.stage_hours_left = 0;
            }
            break;
        case AgentStatus::Hospitalized:
            if (world.rng.bernoulli(p.p_icu)) {
                agent.status = AgentStatus::Icu;
                agent.stage_hours_left = p.stage_hours.icu;
            } else {
                agent.status = AgentStatus::Recovered;
                agent.stage_hours_left = 0;
            }
            break;
        case AgentStatus::Icu:
            if (world.rng.bernoulli(p.p_die)) {
                agent.status = AgentStatus::Dead;
            } else {
                agent.status = AgentStatus::Recovered;
            }
            agent.stage_hours_left = 0;
            break;
        default:
            break;
        }
    }

    ++world.hour;
}

bool epidemic_active(const World& world) {
    for (const Agent& agent : world.agents) {
        if (is_active(agent.status)) {
            return true;
        }
    }
    return false;
}

std::array<std::int64_t, kStatusCount> count_statuses(const World& world) {
    std::array<std::int64_t, kStatusCount> counts{};
    for (const Agent& agent : world.agents) {
        ++counts[static_cast<std::size_t>(agent.status)];
    }
    return counts;
}

StepCounts count_indicators(const World& world) {
    const auto statuses = count_statuses(world);
    auto of = [&](AgentStatus s) { return statuses[static_cast<std::size_t>(s)]; };
    StepCounts counts{};
    counts[static_cast<std::size_t>(Indicator::Susceptible)] =
        of(AgentStatus::Susceptible);
    counts[static_cast<std::size_t>(Indicator::Recovered)] = of(AgentStatus::Recovered);
    counts[static_cast<std::size_t>(Indicator::Presymptomatic)] =
        of(AgentStatus::Presymptomatic);
    counts[static_cast<std::size_t>(Indicator::Asymptomatic)] =
        of(AgentStatus::Asymptomatic);
    counts[static_cast<std::size_t>(Indicator::Symptomatic)] =
        of(AgentStatus::Symptomatic);
    counts[static_cast<std::size_t>(Indicator::Hospitalized)] =
        of(AgentStatus::Hospitalized);
    counts[static_cast<std::size_t>(Indicator::Icu)] = of(AgentStatus::Icu);
    counts[static_cast<std::size_t>(Indicator::Deaths)] = of(AgentStatus::Dead);
    return counts;
}

Trajectory run_simulation(const EpidemicParams& params, std::uint64_t seed,
                          std::int64_t final_step, bool stop_on_extinction) {
    if (final_step < 1) {
        throw ConfigError("finalStep: must be >= 1");
    }
    World world = init_world(params, seed);
    Trajectory trajectory;
    trajectory.steps.reserve(static_cast<std::size_t>(final_step) + 1);
    trajectory.steps.push_back(count_indicators(world));
    for (std::int64_t step = 1; step <= final_step; ++step) {
        if (stop_on_extinction && !epidemic_active(world)) {
            break;
        }
        step_hour(world);
        trajectory.steps.push_back(count_indicators(world));
    }
    return trajectory;
}

} // namespace sweep
