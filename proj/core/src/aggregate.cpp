#include "sweep/aggregate.hpp"

#include "sweep/errors.hpp"
#include "sweep/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sweep {

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    const double position = p * static_cast<double>(n - 1);
    const auto lower = static_cast<std::size_t>(position);
    const double fraction = position - static_cast<double>(lower);
    if (lower + 1 >= n) {
        return sorted[n - 1];
    }
    return sorted[lower] + fraction * (sorted[lower + 1] - sorted[lower]);
}

void check_point_membership(const PointKey& key,
                            std::span<const Trajectory> trajectories,
                            std::int64_t replications) {
    if (trajectories.empty()) {
        throw DataError("point " + std::to_string(key.index) +
                        ": no trajectories to aggregate");
    }
    if (replications <= 0) {
        return;
    }
    for (const Trajectory& t : trajectories) {
        if (t.task_id / replications != key.index) {
            throw DataError("task " + std::to_string(t.task_id) +
                            " does not belong to point " + std::to_string(key.index));
        }
    }
}

double median_of(std::vector<double> values) {
    return quantiles5(std::move(values))[2];
}

std::string describe_assignment(const Assignment& assignment) {
    std::ostringstream out;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << assignment[i].first << "=" << format_double(assignment[i].second);
    }
    return out.str();
}

} // namespace

std::array<double, 5> quantiles5(std::vector<double> values) {
    if (values.empty()) {
        throw DataError("quantiles of an empty multiset");
    }
    std::sort(values.begin(), values.end());
    return {values.front(), interpolated_quantile(values, 0.25),
            interpolated_quantile(values, 0.5), interpolated_quantile(values, 0.75),
            values.back()};
}

std::vector<Trajectory> align_trajectories(std::span<const Trajectory> trajectories) {
    if (trajectories.empty()) {
        throw DataError("cannot align an empty trajectory list");
    }
    std::size_t max_len = 0;
    for (const Trajectory& t : trajectories) {
        if (t.steps.empty()) {
            throw DataError("task " + std::to_string(t.task_id) +
                            ": empty trajectory");
        }
        max_len = std::max(max_len, t.steps.size());
    }
    std::vector<Trajectory> aligned(trajectories.begin(), trajectories.end());
    for (Trajectory& t : aligned) {
        t.steps.resize(max_len, t.steps.back());
    }
    return aligned;
}

ReplicationSummary summarize_point(const PointKey& key,
                                   std::span<const Trajectory> trajectories,
                                   std::int64_t replications) {
    check_point_membership(key, trajectories, replications);
    const auto aligned = align_trajectories(trajectories);
    const std::size_t steps = aligned.front().steps.size();

    ReplicationSummary summary;
    summary.point_index = key.index;
    summary.assignment = key.assignment;
    summary.replication_count = static_cast<std::int64_t>(aligned.size());

    std::vector<double> sample(aligned.size());
    for (int ind = 0; ind < kIndicatorCount; ++ind) {
        auto& band = summary.indicators[static_cast<std::size_t>(ind)];
        band.rows.resize(steps);
        for (std::size_t step = 0; step < steps; ++step) {
            for (std::size_t r = 0; r < aligned.size(); ++r) {
                sample[r] = static_cast<double>(
                    aligned[r].steps[step][static_cast<std::size_t>(ind)]);
            }
            band.rows[step] = quantiles5(sample);
        }
    }
    return summary;
}

std::int64_t total_deaths(const Trajectory& trajectory) {
    return trajectory.steps.back()[static_cast<std::size_t>(Indicator::Deaths)];
}

std::int64_t last_death_day(const Trajectory& trajectory) {
    const auto deaths = static_cast<std::size_t>(Indicator::Deaths);
    std::int64_t last_step = 0;
    std::int64_t previous = 0;
    for (std::size_t step = 0; step < trajectory.steps.size(); ++step) {
        const std::int64_t current = trajectory.steps[step][deaths];
        if (current > previous) {
            last_step = static_cast<std::int64_t>(step);
        }
        previous = current;
    }
    return last_step / 24;
}

std::int64_t peak_hospitalized(const Trajectory& trajectory) {
    const auto hospitalized = static_cast<std::size_t>(Indicator::Hospitalized);
    std::int64_t peak = 0;
    for (const StepCounts& row : trajectory.steps) {
        peak = std::max(peak, row[hospitalized]);
    }
    return peak;
}

PointSummary summarize_scalars(const PointKey& key,
                               std::span<const Trajectory> trajectories,
                               std::int64_t replications) {
    check_point_membership(key, trajectories, replications);
    std::vector<double> deaths, last_days, peaks;
    deaths.reserve(trajectories.size());
    last_days.reserve(trajectories.size());
    peaks.reserve(trajectories.size());
    for (const Trajectory& t : trajectories) {
        if (t.steps.empty()) {
            throw DataError("task " + std::to_string(t.task_id) +
                            ": empty trajectory");
        }
        deaths.push_back(static_cast<double>(total_deaths(t)));
        last_days.push_back(static_cast<double>(last_death_day(t)));
        peaks.push_back(static_cast<double>(peak_hospitalized(t)));
    }
    PointSummary summary;
    summary.point_index = key.index;
    summary.assignment = key.assignment;
    summary.median_total_deaths = median_of(std::move(deaths));
    summary.median_last_death_day = median_of(std::move(last_days));
    summary.median_peak_hospitalized = median_of(std::move(peaks));
    return summary;
}

std::string_view grid_indicator_name(GridIndicator indicator) {
    switch (indicator) {
    case GridIndicator::TotalDeaths: return "deaths";
    case GridIndicator::LastDeathDay: return "lastDeathDay";
    case GridIndicator::PeakHospitalized: return "peakHospitalized";
    }
    return "deaths";
}

double grid_value(const PointSummary& summary, GridIndicator indicator) {
    switch (indicator) {
    case GridIndicator::TotalDeaths: return summary.median_total_deaths;
    case GridIndicator::LastDeathDay: return summary.median_last_death_day;
    case GridIndicator::PeakHospitalized: return summary.median_peak_hospitalized;
    }
    return summary.median_total_deaths;
}

GridSummary build_grid(std::span<const PointSummary> summaries,
                       const ParameterSpec& x_spec, const ParameterSpec& y_spec,
                       GridIndicator indicator) {
    GridSummary grid;
    grid.x_param = x_spec.name;
    grid.y_param = y_spec.name;
    grid.x_values = enumerate_values(x_spec);
    grid.y_values = enumerate_values(y_spec);
    const double unset = std::numeric_limits<double>::quiet_NaN();
    grid.cells.assign(grid.y_values.size(),
                      std::vector<double>(grid.x_values.size(), unset));

    auto value_index = [](const std::vector<double>& values, double v) {
        auto it = std::find(values.begin(), values.end(), v);
        return it == values.end() ? values.size()
                                  : static_cast<std::size_t>(it - values.begin());
    };

    for (const PointSummary& summary : summaries) {
        double x = unset;
        double y = unset;
        for (const auto& [name, value] : summary.assignment) {
            if (name == grid.x_param) {
                x = value;
            } else if (name == grid.y_param) {
                y = value;
            } else {
                throw DataError("point " + std::to_string(summary.point_index) +
                                " sweeps parameter '" + name +
                                "' outside the requested grid");
            }
        }
        const std::size_t xi = value_index(grid.x_values, x);
        const std::size_t yi = value_index(grid.y_values, y);
        if (xi == grid.x_values.size() || yi == grid.y_values.size()) {
            throw DataError("point " + std::to_string(summary.point_index) + " (" +
                            describe_assignment(summary.assignment) +
                            ") does not lie on the grid axes");
        }
        grid.cells[yi][xi] = grid_value(summary, indicator);
    }

    std::string missing;
    for (std::size_t yi = 0; yi < grid.y_values.size(); ++yi) {
        for (std::size_t xi = 0; xi < grid.x_values.size(); ++xi) {
            if (std::isnan(grid.cells[yi][xi])) {
                if (!missing.empty()) {
                    missing += "; ";
                }
                missing += grid.x_param + "=" + format_double(grid.x_values[xi]) +
                           ", " + grid.y_param + "=" + format_double(grid.y_values[yi]);
            }
        }
    }
    if (!missing.empty()) {
        throw DataError("grid cells missing for: " + missing);
    }
    return grid;
}

} // namespace sweep
