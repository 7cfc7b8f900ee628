#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace sweep {

/// The eight exported epidemic indicators, in CSV column order.
enum class Indicator : int {
    Susceptible = 0,
    Recovered,
    Presymptomatic,
    Asymptomatic,
    Symptomatic,
    Hospitalized,
    Icu,
    Deaths,
};

inline constexpr int kIndicatorCount = 8;

inline constexpr std::array<std::string_view, kIndicatorCount> kIndicatorNames = {
    "susceptible", "recovered",    "presymptomatic", "asymptomatic",
    "symptomatic", "hospitalized", "icu",            "deaths",
};

/// Indicator counts at one step.
using StepCounts = std::array<std::int64_t, kIndicatorCount>;

/// Per-simulation time series: row t holds the indicator counts at hour t.
/// Rows are contiguous from step 0; the step index is the row index.
struct Trajectory {
    std::int64_t task_id = 0;
    std::vector<StepCounts> steps;

    std::int64_t at(std::size_t step, Indicator ind) const {
        return steps[step][static_cast<std::size_t>(ind)];
    }
    bool operator==(const Trajectory&) const = default;
};

/// `task-<taskId>.csv` inside `dir`.
std::filesystem::path task_csv_path(const std::filesystem::path& dir,
                                    std::int64_t task_id);

/// Writes the trajectory CSV (header `step,susceptible,...,deaths`, LF line
/// endings) to a temporary name and atomically renames it into place, so a
/// file at `path` is always complete. Throws IoError on failure.
void write_trajectory_csv(const Trajectory& trajectory,
                          const std::filesystem::path& path);

/// Parses a trajectory CSV, validating the header, the dense 0-based step
/// column and non-negative counts. Throws FormatError with line context,
/// IoError if unreadable. The task id is recovered from a
/// `task-<id>.csv` file name when present.
Trajectory read_trajectory_csv(const std::filesystem::path& path);

} // namespace sweep
