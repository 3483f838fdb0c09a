// output.hpp - CSV datasets and static SVG plots

#pragma once

#include "qcorr/experiments.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qcorr {

inline constexpr std::string_view kCsvHeader =
    "time,partition,pipeline,mutual_info,classical,quantum,concurrence,measured_side";

/// Header plus one row per record, sorted by (time, partition, pipeline),
/// reals with 12 significant digits, LF line endings.
std::string format_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

struct PlotSeries {
    std::string label;
    SweepResult result;
};

/// 2x2 panels (s1s2, r1r2, s1r1, s1r2), one curve per measure and series.
/// Brute-force records are preferred; closed-form records are used when a
/// series has no brute-force data for a panel.
std::string render_svg(std::span<const PlotSeries> series, std::span<const Measure> measures,
                       const std::string& title);
void emit_svg_plot(std::span<const PlotSeries> series, std::span<const Measure> measures,
                   const std::string& title, const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Runs every built-in figure scenario, writing <fig>_<overlay>.csv and
/// <fig>.svg into `dir`. Returns the written paths in order.
std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir,
                                                 const SweepOptions& options);

}  // namespace qcorr
