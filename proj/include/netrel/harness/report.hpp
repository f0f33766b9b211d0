#pragma once

#include "netrel/harness/experiment.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace netrel {

enum class ReportFormat { Csv, Json, Svg };

ReportFormat parse_report_format(std::string_view text);

inline constexpr std::string_view kCsvHeader = "instance,method,eps,delta,estimate,truth,eps_o,N,tau_seconds,seed";

// RFC 4180. Doubles use the shortest round-trip form, dyadics "p/q",
// absent optionals an empty field.
std::string to_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_csv(std::string_view text);

// Array of objects keyed by the CSV header names; dyadics as "p/q" strings.
std::string to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_json(std::string_view text);

// Horizontal axis for plots.
enum class PlotAxis { Side, Probability, Index };

PlotAxis parse_plot_axis(std::string_view text);

// x value of a row: grid side or p from a "grid:..." instance id, otherwise
// the row index.
double plot_x(const ReportRow& row, std::size_t index, PlotAxis axis);

// One SVG scatter plot per metric (eps_o, tau_seconds). Rows without eps_o
// are left out of that plot. Returns the written paths:
// <stem>_eps_o.svg and <stem>_tau.svg.
std::vector<std::filesystem::path> write_plots(const std::vector<ReportRow>& rows, PlotAxis axis,
                                               const std::filesystem::path& stem);

// Csv and Json write `path`; Svg treats it as the stem for write_plots with
// the Index axis unless every id is a grid string, in which case Side is used.
void write_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::filesystem::path& path);

} // namespace netrel
