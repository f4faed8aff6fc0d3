#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "ctes/errors.hpp"
#include "export.hpp"

namespace ctes::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kPanelHeight = 260.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 45.0;

std::string fmt(double v, const char* format = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;  // data bounds
  double top;             // panel offset in the document

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    const double h = kPanelHeight - kTop - kBottom;
    return top + kTop + h - (y - y0) / (y1 - y0) * h;
  }
};

std::string star_points(double cx, double cy, double r) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    const double rad = k % 2 == 0 ? r : r * 0.45;
    const double a = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
    pts += fmt(cx + rad * std::cos(a)) + ',' + fmt(cy + rad * std::sin(a)) + ' ';
  }
  return pts;
}

std::string triangle_points(double cx, double cy, double r) {
  return fmt(cx) + ',' + fmt(cy - r) + ' ' + fmt(cx - r) + ',' + fmt(cy + r * 0.8) + ' ' + fmt(cx + r) + ',' +
         fmt(cy + r * 0.8);
}

void draw_panel(std::ostream& os, const PlotPanel& p, double top) {
  double x0 = INFINITY, x1 = -INFINITY;
  for (const auto& [x, y] : p.curve) x0 = std::min(x0, x), x1 = std::max(x1, x);
  for (const auto& m : p.markers) x0 = std::min(x0, m.x), x1 = std::max(x1, m.x);
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  const Frame f{x0, x1, 0.0, 1.05, top};

  os << "<g class=\"panel\">\n";
  os << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(top + 18) << "\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(p.title) << "</text>\n";
  const double bottom = f.py(0.0);
  os << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(f.py(1.05)) << "\" width=\"" << fmt(kWidth - kLeft - kRight)
     << "\" height=\"" << fmt(bottom - f.py(1.05)) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0;
    os << "<line x1=\"" << fmt(f.px(xv)) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(f.px(xv)) << "\" y2=\""
       << fmt(bottom + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << fmt(bottom + 18) << "\" text-anchor=\"middle\" font-size=\"11\">"
       << fmt(xv, "%.6g") << "</text>\n";
  }
  for (double yv : {0.0, 0.5, 1.0}) {
    os << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(f.py(yv)) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
       << fmt(f.py(yv)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(f.py(yv) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
       << fmt(yv, "%.1f") << "</text>\n";
  }
  os << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(bottom + 36) << "\" text-anchor=\"middle\" font-size=\"12\">"
     << escape(p.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << fmt(f.py(0.5)) << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << fmt(f.py(0.5)) << ")\">" << escape(p.y_label) << "</text>\n";

  if (!p.curve.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (const auto& [x, y] : p.curve) os << fmt(f.px(x)) << ',' << fmt(f.py(y)) << ' ';
    os << "\"/>\n";
  }
  for (const auto& m : p.markers) {
    const double cx = f.px(m.x), cy = f.py(m.y);
    if (m.kind == MarkerKind::star) {
      os << "<polygon fill=\"#d62728\" stroke=\"black\" stroke-width=\"0.5\" points=\"" << star_points(cx, cy, 7) << "\"/>\n";
    } else {
      os << "<polygon fill=\"#2ca02c\" stroke=\"black\" stroke-width=\"0.5\" points=\"" << triangle_points(cx, cy, 5)
         << "\"/>\n";
    }
  }
  os << "</g>\n";
}

}  // namespace

void emit_plot(const std::vector<PlotPanel>& panels, const std::filesystem::path& svg_path) {
  const bool has_data = std::any_of(panels.begin(), panels.end(),
                                    [](const PlotPanel& p) { return !p.curve.empty() || !p.markers.empty(); });
  if (!has_data) throw DomainError("plot: no data to draw");

  std::ofstream svg(svg_path);
  if (!svg) throw IoError("cannot write " + svg_path.string());
  const double height = kPanelHeight * static_cast<double>(panels.size());
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth, "%.0f") << "\" height=\""
      << fmt(height, "%.0f") << "\" viewBox=\"0 0 " << fmt(kWidth, "%.0f") << ' ' << fmt(height, "%.0f")
      << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) draw_panel(svg, panels[i], kPanelHeight * static_cast<double>(i));
  svg << "</svg>\n";
  if (!svg) throw IoError("failed writing " + svg_path.string());

  auto csv_path = svg_path;
  csv_path.replace_extension(".csv");
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write " + csv_path.string());
  csv << "panel,kind,x,y\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    for (const auto& [x, y] : panels[i].curve) csv << i << ",curve," << format_double(x) << ',' << format_double(y) << '\n';
    for (const auto& m : panels[i].markers) {
      csv << i << ',' << (m.kind == MarkerKind::star ? "star" : "triangle") << ',' << format_double(m.x) << ','
          << format_double(m.y) << '\n';
    }
  }
  if (!csv) throw IoError("failed writing " + csv_path.string());
}

}  // namespace ctes::cli
