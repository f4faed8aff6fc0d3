#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ctes/curlicue.hpp"
#include "ctes/errors.hpp"
#include "ctes/extractor.hpp"
#include "ctes/interferogram.hpp"
#include "ctes/planner.hpp"
#include "export.hpp"
#include "plot.hpp"

namespace ctes::cli {
namespace {

// Plot curves are resampled at this density regardless of the run's mode.
constexpr std::uint32_t kPlotSamplesPerUnit = 64;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError(std::string(what) + ": cannot parse '" + std::string(s) + "'");
  }
  return v;
}

struct ZetaRange {
  double from;
  double to;
  double step;
};

ZetaRange parse_zeta_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParameterError("--zeta-range: expected a:b:step");
  ZetaRange r{parse_number<double>(parts[0], "--zeta-range"), parse_number<double>(parts[1], "--zeta-range"),
              parse_number<double>(parts[2], "--zeta-range")};
  if (!std::isfinite(r.from) || !std::isfinite(r.to) || !(r.to >= r.from)) {
    throw ParameterError("--zeta-range: need finite a <= b");
  }
  if (!(r.step > 0.0)) throw ParameterError("--zeta-range: step must be > 0");
  if ((r.to - r.from) / r.step > 5e7) throw ParameterError("--zeta-range: too many points");
  return r;
}

std::pair<std::uint64_t, std::uint64_t> parse_n_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ParameterError("--N-range: expected N_min:N_max");
  return {parse_number<std::uint64_t>(parts[0], "--N-range"), parse_number<std::uint64_t>(parts[1], "--N-range")};
}

// Runs `body` with either the --out file or the default stream.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path);
  body(file);
  if (!file) throw IoError("failed writing " + path);
}

CurlicueParams make_params(int m, int j) {
  if (m < 2) throw ParameterError("--M must be >= 2");
  if (j < 1) throw ParameterError("--j must be >= 1");
  return CurlicueParams(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(j));
}

SamplingMode parse_mode(const std::string& mode) {
  if (mode == "direct") return SamplingMode::direct;
  if (mode == "sampled") return SamplingMode::sampled;
  throw ParameterError("--mode must be direct or sampled");
}

// Dense curve of one interferogram on the xi_{N,s} axis plus trial markers.
PlotPanel trial_panel(const CurlicueParams& params, const SpectralWindow& window, double x, std::uint64_t n,
                      std::uint64_t s, const std::string& title) {
  SamplingConfig cfg;
  cfg.samples_per_unit = kPlotSamplesPerUnit;
  const std::uint64_t scaled = s * n;
  const auto view = rescale(record(params, window, x, build_grid(window, x, scaled, cfg)), n, s);
  PlotPanel panel;
  panel.title = title;
  panel.x_label = s == 1 ? "xi_N" : "xi_{N,s}";
  panel.y_label = "intensity";
  for (const auto& smp : view.samples()) panel.curve.emplace_back(smp.xi_n, smp.intensity);
  TrialOptions to;
  for (const auto& c : candidate_trials(view, to)) {
    const bool divides = n % c.ell == 0;
    panel.markers.push_back({static_cast<double>(c.ell), c.intensity, divides ? MarkerKind::star : MarkerKind::triangle});
  }
  return panel;
}

struct CurlicueArgs {
  int m = 3;
  int j = 2;
  std::string zeta_range = "-0.5:0.5:0.001";
  std::string out;
  std::string plot;
};

struct InterferogramArgs {
  int m = 3;
  int j = 2;
  double x = 0.0;
  double o_min = 1.0;
  double o_max = 2.0;
  std::uint64_t n = 0;
  std::uint64_t s = 1;
  std::uint32_t samples_per_unit = 32;
  bool no_snap = false;
  std::string out;
  std::string plot;
};

struct PlanArgs {
  int method = 0;
  std::uint64_t n = 0;
  std::string n_range;
  double o_min = 1.0;
  double o_max = 2.0;
  std::uint64_t s = 1;
  double x_max = 0.0;
  double x0 = 0.0;
  std::string out;
};

struct FactorArgs {
  std::uint64_t n = 0;
  int method = 0;
  double o_min = 1.0;
  double o_max = 2.0;
  std::uint64_t s = 1;
  int m = 3;
  int j = 2;
  std::string mode = "direct";
  std::uint32_t samples_per_unit = 32;
  double threshold = -1.0;
  std::string n_range;
  double x_max = 0.0;
  bool include_trivial = false;
  bool recursive = false;
  std::string out;
  std::string plot;
};

void run_curlicue(const CurlicueArgs& a, std::ostream& out) {
  const auto params = make_params(a.m, a.j);
  const auto range = parse_zeta_range(a.zeta_range);
  const auto count = static_cast<std::size_t>(std::floor((range.to - range.from) / range.step + 1e-9)) + 1;

  PlotPanel panel;
  panel.title = "curlicue intensity, M=" + std::to_string(a.m) + ", j=" + std::to_string(a.j);
  panel.x_label = "zeta";
  panel.y_label = "|s(zeta)|^2";
  panel.curve.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double zeta = range.from + static_cast<double>(i) * range.step;
    panel.curve.emplace_back(zeta, curlicue_intensity(zeta, params));
  }
  with_output(a.out, out, [&](std::ostream& os) {
    os << "zeta,intensity\n";
    for (const auto& [z, v] : panel.curve) os << format_double(z) << ',' << format_double(v) << '\n';
  });
  if (!a.plot.empty()) emit_plot({panel}, a.plot);
}

void run_interferogram(const InterferogramArgs& a, std::ostream& out) {
  const auto params = make_params(a.m, a.j);
  const SpectralWindow window(a.o_min, a.o_max);
  if (!(a.x > 0.0)) throw DomainError("--x must be > 0");
  if (a.s == 0) throw ParameterError("--s must be >= 1");
  SamplingConfig cfg;
  cfg.samples_per_unit = a.samples_per_unit;
  cfg.snap_to_integers = !a.no_snap;
  cfg.validate();
  std::optional<std::uint64_t> n;
  if (a.n > 0) n = a.n;

  const auto ig = record(params, window, a.x, build_grid(window, a.x, n ? a.s * *n : 1, cfg));
  with_output(a.out, out, [&](std::ostream& os) { write_interferogram_csv(os, ig, n, a.s); });
  if (!a.plot.empty()) {
    if (n) {
      emit_plot({trial_panel(params, window, a.x, *n, a.s, "interferogram, N=" + std::to_string(*n))}, a.plot);
    } else {
      PlotPanel panel;
      panel.title = "interferogram, x=" + format_double(a.x);
      panel.x_label = "o_xi";
      panel.y_label = "intensity";
      for (const auto& smp : ig.samples()) panel.curve.emplace_back(smp.o_xi, smp.intensity);
      emit_plot({panel}, a.plot);
    }
  }
}

InterferogramPlan build_plan(int method_no, std::uint64_t n, const std::string& n_range, const SpectralWindow& window,
                             std::uint64_t s, double x_max, double x0) {
  const Method method = method_from_number(method_no);
  if (s == 0) throw ParameterError("--s must be >= 1");
  PlanOptions po;
  if (x_max > 0.0) po.x_max = x_max;
  if (x0 > 0.0) po.x0 = x0;
  if (!n_range.empty()) {
    const auto [lo, hi] = parse_n_range(n_range);
    return sequence_plan_range(lo, hi, window, method, s, po);
  }
  if (n == 0) throw ParameterError("one of --N or --N-range is required");
  if (s == 1) return sequence_plan_single_n(n, window, method, po);
  return sequence_plan_range(n, n, window, method, s, po);
}

void run_plan(const PlanArgs& a, std::ostream& out) {
  if (a.n > 0 && !a.n_range.empty()) throw ParameterError("--N and --N-range are mutually exclusive");
  const SpectralWindow window(a.o_min, a.o_max);
  const auto plan = build_plan(a.method, a.n, a.n_range, window, a.s, a.x_max, a.x0);
  with_output(a.out, out, [&](std::ostream& os) { os << plan_to_json(plan).dump(2) << '\n'; });
}

void run_factor(const FactorArgs& a, std::ostream& out) {
  const Method method = method_from_number(a.method);
  const auto params = make_params(a.m, a.j);
  const SpectralWindow window(a.o_min, a.o_max);
  if (a.n < 2) throw DomainError("--N must be >= 2");
  if (a.s == 0) throw ParameterError("--s must be >= 1");
  SamplingConfig cfg;
  cfg.mode = parse_mode(a.mode);
  cfg.samples_per_unit = a.samples_per_unit;
  cfg.validate();

  FactorOptions fo;
  if (!a.n_range.empty()) fo.plan = build_plan(a.method, 0, a.n_range, window, a.s, 0.0, 0.0);
  if (a.threshold >= 0.0) fo.threshold = a.threshold;
  if (a.x_max > 0.0) fo.x_max = a.x_max;
  fo.include_trivial = a.include_trivial;
  fo.recursive = a.recursive;

  const auto report = factor(a.n, window, method, a.s, params, cfg, fo);
  with_output(a.out, out, [&](std::ostream& os) { os << report_to_json(report).dump(2) << '\n'; });

  if (!a.plot.empty()) {
    std::vector<PlotPanel> panels;
    for (std::size_t i = 0; i < report.x_values.size(); ++i) {
      const double x = report.x_values[i];
      if (fo.x_max && x > *fo.x_max) continue;
      panels.push_back(trial_panel(params, window, x, report.reduced_n, a.s,
                                   "N=" + std::to_string(report.reduced_n) + ", interferogram " + std::to_string(i) +
                                       ", x=" + format_double(x)));
    }
    emit_plot(panels, a.plot);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous truncated exponential sum factoring simulator", "ctes"};
  app.require_subcommand(1);

  CurlicueArgs ca;
  auto* cur = app.add_subcommand("curlicue", "Dump |s(zeta)|^2 over a zeta range as CSV");
  cur->add_option("--M", ca.m, "Number of interfering terms")->capture_default_str();
  cur->add_option("--j", ca.j, "Phase order")->capture_default_str();
  cur->add_option("--zeta-range", ca.zeta_range, "a:b:step")->capture_default_str();
  cur->add_option("--out", ca.out, "CSV output path (default stdout)");
  cur->add_option("--plot", ca.plot, "SVG output path");

  InterferogramArgs ia;
  auto* ifg = app.add_subcommand("interferogram", "Record one interferogram I(o_xi; x) as CSV");
  ifg->add_option("--M", ia.m)->capture_default_str();
  ifg->add_option("--j", ia.j)->capture_default_str();
  ifg->add_option("--x", ia.x, "Unit parameter x")->required();
  ifg->add_option("--o-min", ia.o_min)->capture_default_str();
  ifg->add_option("--o-max", ia.o_max)->capture_default_str();
  ifg->add_option("--N", ia.n, "Target integer; adds the xi_N column");
  ifg->add_option("--s", ia.s, "Scale s for xi_{N,s}")->capture_default_str();
  ifg->add_option("--samples-per-unit", ia.samples_per_unit)->capture_default_str();
  ifg->add_flag("--no-snap", ia.no_snap, "Do not insert integer trial points");
  ifg->add_option("--out", ia.out);
  ifg->add_option("--plot", ia.plot);

  PlanArgs pa;
  auto* pln = app.add_subcommand("plan", "Print the interferogram plan as JSON");
  pln->add_option("--method", pa.method, "1 or 2")->required();
  pln->add_option("--N", pa.n, "Single target integer");
  pln->add_option("--N-range", pa.n_range, "N_min:N_max");
  pln->add_option("--o-min", pa.o_min)->capture_default_str();
  pln->add_option("--o-max", pa.o_max)->capture_default_str();
  pln->add_option("--s", pa.s)->capture_default_str();
  pln->add_option("--x-max", pa.x_max, "Physical ceiling on x");
  pln->add_option("--x0", pa.x0, "Override the first unit parameter");
  pln->add_option("--out", pa.out);

  FactorArgs fa;
  auto* fac = app.add_subcommand("factor", "Factor N and print the report as JSON");
  fac->add_option("--N", fa.n)->required();
  fac->add_option("--method", fa.method, "1 or 2")->required();
  fac->add_option("--o-min", fa.o_min)->capture_default_str();
  fac->add_option("--o-max", fa.o_max)->capture_default_str();
  fac->add_option("--s", fa.s)->capture_default_str();
  fac->add_option("--M", fa.m)->capture_default_str();
  fac->add_option("--j", fa.j)->capture_default_str();
  fac->add_option("--mode", fa.mode, "direct or sampled")->capture_default_str();
  fac->add_option("--samples-per-unit", fa.samples_per_unit)->capture_default_str();
  fac->add_option("--threshold", fa.threshold, "Flagging threshold (default depends on mode)");
  fac->add_option("--N-range", fa.n_range, "Run on the range plan N_min:N_max");
  fac->add_option("--x-max", fa.x_max);
  fac->add_flag("--include-trivial", fa.include_trivial);
  fac->add_flag("--recursive", fa.recursive, "Also report the full prime decomposition");
  fac->add_option("--out", fa.out);
  fac->add_option("--plot", fa.plot, "SVG with one panel per interferogram");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitDomain;
  }

  try {
    if (cur->parsed()) run_curlicue(ca, out);
    if (ifg->parsed()) run_interferogram(ia, out);
    if (pln->parsed()) run_plan(pa, out);
    if (fac->parsed()) run_factor(fa, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace ctes::cli
