#pragma once

// File formats: JSON metric and scenario documents, the grid CSV and the
// ternary SVG plot.

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "tradecone/metric.hpp"
#include "tradecone/scenario.hpp"

namespace tradecone {

/// Parses a metric document. Structural problems raise ParseError; the
/// metric itself is not resolved here.
MetricSpec parse_metric_spec(const std::string& text);
std::string write_metric_spec(const MetricSpec& spec);

/// An explicit-matrix document, optionally recording the spec it came from
/// under "source". parse_metric_spec reads it back as the explicit matrix.
std::string write_metric_document(const MetricMatrix& m, const std::optional<MetricSpec>& source = std::nullopt);

/// Keys: countries, labor, epsilon or sigma (exactly one), t, metric.
/// sigma is converted to epsilon here.
Scenario parse_scenario(const std::string& text);
std::string write_scenario(const Scenario& s);

/// Header alpha,beta,gamma,stable,index; reals with 9 significant digits.
std::string write_grid_csv(const StabilityGrid& grid);
StabilityGrid read_grid_csv(const std::string& text);

/// Equilateral triangle, M1 bottom-left, M2 top, M3 bottom-right; one dot
/// per cell, blue when stable and red otherwise.
std::string render_svg(const StabilityGrid& grid, const std::array<std::string, 3>& labels);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tradecone
