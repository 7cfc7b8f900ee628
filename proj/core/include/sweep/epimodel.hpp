#pragma once

#include "sweep/plan.hpp"
#include "sweep/rng.hpp"
#include "sweep/trajectory.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace sweep {

/// Hours spent in each timed disease stage.
struct StageHours {
    std::int64_t latent = 48;
    std::int64_t presymptomatic = 24;
    std::int64_t infectious = 168;
    std::int64_t hospital = 120;
    std::int64_t icu = 120;
    bool operator==(const StageHours&) const = default;
};

/// Full configuration of the built-in model. All fields are configuration,
/// not constants; swept parameters override them by name (see
/// apply_assignment).
struct EpidemicParams {
    double basic_viral_release = 0.05;   // load deposited per infectious agent per hour
    double basic_viral_decrease = 0.1;   // per-hour fractional decay of building load
    double direct_transmission_prob = 0.05; // per infectious co-occupant per hour
    double env_infection_factor = 0.5;   // slope of the linear load -> probability map
    std::int64_t population = 500;
    std::int64_t n_buildings = 50;
    std::int64_t initial_infected = 5;
    StageHours stage_hours;
    double p_asymptomatic = 0.3;
    double p_hospitalize = 0.2;
    double p_icu = 0.3;
    double p_die = 0.5;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    bool operator==(const EpidemicParams&) const = default;
};

/// Sets swept parameters by name (e.g. "basic_viral_release"). Throws
/// ConfigError for names the built-in model does not expose.
void apply_assignment(EpidemicParams& params, const Assignment& assignment);

enum class AgentStatus : unsigned char {
    Susceptible = 0,
    Latent,
    Presymptomatic,
    Asymptomatic,
    Symptomatic,
    Hospitalized,
    Icu,
    Recovered,
    Dead,
};

inline constexpr int kStatusCount = 9;

struct Agent {
    AgentStatus status = AgentStatus::Susceptible;
    std::int64_t stage_hours_left = 0;
    std::int32_t home = 0;
    std::int32_t workplace = 0;
    bool operator==(const Agent&) const = default;
};

struct Building {
    double viral_load = 0.0;
    bool operator==(const Building&) const = default;
};

/// Complete simulation state. A World instance is single-threaded; distinct
/// instances may run concurrently without coordination.
struct World {
    EpidemicParams params;
    std::int64_t hour = 0;
    std::vector<Agent> agents;
    std::vector<Building> buildings;
    Rng rng;
};

/// Seeded deterministic initialization: every agent draws a home and a
/// workplace building (two draws per agent, in agent-id order), the first
/// initialInfected agents start Latent, all building loads start at 0.
World init_world(const EpidemicParams& params, std::uint64_t seed);

/// Advances one hour, in fixed sub-phase order:
///   1. mobility    — agents occupy workplace during hours 8..17 of the day,
///                    home otherwise; Hospitalized/Icu/Dead occupy no building
///   2. release     — each Presymptomatic/Asymptomatic/Symptomatic agent adds
///                    basic_viral_release to its building's load
///   3. environment — each Susceptible agent becomes Latent with probability
///                    min(1, envInfectionFactor * load of its building)
///   4. contact     — each remaining Susceptible agent becomes Latent with
///                    probability 1-(1-directTransmissionProb)^k, k = number
///                    of infectious co-occupants
///   5. decay       — every building load is multiplied by (1 - basic_viral_decrease)
///   6. progression — stage countdowns decrement; on zero the agent moves
///                    along the progression graph, branching draws decide
///                    Asymptomatic / Hospitalized / Icu / Dead outcomes
/// Random draws are consumed in agent-id order within each sub-phase; phases
/// 3 and 4 consume exactly one draw per susceptible agent they visit.
void step_hour(World& world);

/// True while any agent is Latent, Presymptomatic, Asymptomatic,
/// Symptomatic, Hospitalized or in Icu.
bool epidemic_active(const World& world);

/// Counts of all nine statuses (including Latent, which the exported
/// indicators omit). Sums to the population at every step.
std::array<std::int64_t, kStatusCount> count_statuses(const World& world);

/// The eight exported indicators for the world's current state.
StepCounts count_indicators(const World& world);

/// Runs the model for finalStep hours, recording the indicators after every
/// hour (row 0 is the initial state). With stopOnExtinction the run ends as
/// soon as no agent is in an active stage. The result is a pure function of
/// (params, seed, finalStep, stopOnExtinction).
Trajectory run_simulation(const EpidemicParams& params, std::uint64_t seed,
                          std::int64_t final_step, bool stop_on_extinction);

} // namespace sweep
