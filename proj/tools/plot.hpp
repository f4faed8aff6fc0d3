#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ctes::cli {

enum class MarkerKind { star, triangle };

struct Marker {
  double x;
  double y;
  MarkerKind kind;
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> curve;
  std::vector<Marker> markers;
};

/// Writes the panels stacked vertically into one SVG file and the plotted
/// data into a sibling `.csv` (columns panel,kind,x,y). Output depends only
/// on the input. Throws DomainError for no data and IoError when a file
/// cannot be written.
void emit_plot(const std::vector<PlotPanel>& panels, const std::filesystem::path& svg_path);

}  // namespace ctes::cli
