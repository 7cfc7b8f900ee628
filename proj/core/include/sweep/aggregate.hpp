#pragma once

#include "sweep/plan.hpp"
#include "sweep/trajectory.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sweep {

/// (min, q1, median, q3, max) of a non-empty multiset. Quartiles use linear
/// interpolation between closest ranks: q(p) sits at fractional index
/// p*(n-1) in the sorted values (the "R-7" convention). Throws DataError on
/// empty input.
std::array<double, 5> quantiles5(std::vector<double> values);

/// Extends every trajectory to the longest length by repeating its final
/// row (absorbing-state carry-forward). Inputs are copied, not modified.
/// Throws DataError on an empty list.
std::vector<Trajectory> align_trajectories(std::span<const Trajectory> trajectories);

/// Identifies one point of the parameter space.
struct PointKey {
    std::int64_t index = 0;
    Assignment assignment;
};

/// Per-step five-number band of one indicator across replications.
struct IndicatorBand {
    std::vector<std::array<double, 5>> rows; // min, q1, median, q3, max
    bool operator==(const IndicatorBand&) const = default;
};

/// Replication statistics at one parameter point: for each indicator, the
/// per-step min/Q1/median/Q3/max across replications.
struct ReplicationSummary {
    std::int64_t point_index = 0;
    Assignment assignment;
    std::array<IndicatorBand, kIndicatorCount> indicators;
    std::int64_t replication_count = 0;

    std::size_t step_count() const { return indicators[0].rows.size(); }
    bool operator==(const ReplicationSummary&) const = default;
};

/// Aligns the replications of one point and applies quantiles5 per
/// indicator per step. When `replications` > 0, every trajectory's task id
/// is checked to belong to the keyed point; a stray replication raises
/// DataError. Throws DataError on an empty list.
ReplicationSummary summarize_point(const PointKey& key,
                                   std::span<const Trajectory> trajectories,
                                   std::int64_t replications = 0);

/// Scalar outcomes of one trajectory.
std::int64_t total_deaths(const Trajectory& trajectory);
/// Day (step/24) of the last increase in cumulative deaths, 0 when the
/// trajectory has no deaths.
std::int64_t last_death_day(const Trajectory& trajectory);
std::int64_t peak_hospitalized(const Trajectory& trajectory);

/// Medians of the per-replication scalar outcomes at one point.
struct PointSummary {
    std::int64_t point_index = 0;
    Assignment assignment;
    double median_total_deaths = 0.0;
    double median_last_death_day = 0.0;
    double median_peak_hospitalized = 0.0;
    bool operator==(const PointSummary&) const = default;
};

PointSummary summarize_scalars(const PointKey& key,
                               std::span<const Trajectory> trajectories,
                               std::int64_t replications = 0);

/// Scalar indicator a grid can display.
enum class GridIndicator {
    TotalDeaths,
    LastDeathDay,
    PeakHospitalized,
};

std::string_view grid_indicator_name(GridIndicator indicator);
double grid_value(const PointSummary& summary, GridIndicator indicator);

/// 2-D parameter grid of one scalar point outcome; cells[yi][xi] pairs
/// yValues[yi] with xValues[xi].
struct GridSummary {
    std::string x_param;
    std::string y_param;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<std::vector<double>> cells;
    bool operator==(const GridSummary&) const = default;
};

/// Arranges point summaries of an exhaustive two-parameter sweep into a
/// grid whose axes follow the enumerate_values order of the two specs.
/// Throws DataError when a summary's assignment does not name exactly these
/// two parameters or when grid cells are missing (the message lists the
/// absent assignments).
GridSummary build_grid(std::span<const PointSummary> summaries,
                       const ParameterSpec& x_spec, const ParameterSpec& y_spec,
                       GridIndicator indicator);

} // namespace sweep
