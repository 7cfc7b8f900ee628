#pragma once

#include "sweep/aggregate.hpp"

#include <filesystem>
#include <string>

namespace sweep {

/// SVG panel grid mirroring the replication view: row 1 susceptible and
/// recovered, row 2 presymptomatic/asymptomatic/symptomatic, row 3
/// hospitalized/icu/deaths. Each panel draws the [min,max] band as a filled
/// polygon and q1/median/q3 as polylines against the step axis. Output is a
/// pure function of the inputs (byte-identical for identical summaries).
std::string render_timeseries(const ReplicationSummary& summary,
                              const std::string& title, int width = 1200,
                              int height = 900);

/// SVG heatmap of a 2-D grid summary: one annotated rectangle per cell, a
/// sequential color scale from the smallest to the largest cell value and a
/// legend. Deterministic output bytes.
std::string render_heatmap(const GridSummary& grid, const std::string& title,
                           int width = 700, int height = 600);

/// `point-<idx>-summary.csv`: header `step,indicator,min,q1,median,q3,max`,
/// one row per (indicator, step), stats in shortest round-trip form.
std::filesystem::path write_summary_csv(const ReplicationSummary& summary,
                                        const std::filesystem::path& path);

/// `grid-<indicator>.csv`: first row is `yParam\xParam` then the x values,
/// each following row starts with its y value. Round-trips through
/// read_grid_csv bit-exactly.
std::filesystem::path write_grid_csv(const GridSummary& grid,
                                     const std::filesystem::path& path);

GridSummary read_grid_csv(const std::filesystem::path& path);

/// Writes pre-rendered document text (SVG) to disk. Throws IoError.
std::filesystem::path write_text_file(const std::string& content,
                                      const std::filesystem::path& path);

} // namespace sweep
