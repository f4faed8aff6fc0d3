#include "export.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace ctes::cli {
namespace {

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_interferogram_csv(std::ostream& os, const Interferogram& ig, std::optional<std::uint64_t> n,
                             std::uint64_t s) {
  std::optional<RescaledView> view;
  if (n) view.emplace(rescale(ig, *n, s));
  os << "o_xi,xi,xi_N,intensity\n";
  const auto& samples = ig.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    os << format_double(samples[i].o_xi) << ',' << format_double(samples[i].o_xi / ig.x()) << ',';
    if (view) os << format_double(view->samples()[i].xi_n);
    os << ',' << format_double(samples[i].intensity) << '\n';
  }
}

std::vector<CsvRow> read_interferogram_csv(std::istream& is) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != "o_xi,xi,xi_N,intensity") throw IoError("csv: missing header");
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (std::size_t f = 0; f < 4; ++f) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (f == 3)) {
        throw IoError("csv line " + std::to_string(lineno) + ": expected 4 fields");
      }
      fields[f] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    CsvRow row{parse_double(fields[0], lineno), parse_double(fields[1], lineno), std::nullopt,
               parse_double(fields[3], lineno)};
    if (!fields[2].empty()) row.xi_n = parse_double(fields[2], lineno);
    rows.push_back(row);
  }
  return rows;
}

nlohmann::ordered_json plan_to_json(const InterferogramPlan& plan) {
  nlohmann::ordered_json j;
  j["method"] = method_number(plan.method());
  j["s"] = plan.s();
  j["c"] = plan.c();
  j["o_min"] = plan.window().o_min();
  j["o_max"] = plan.window().o_max();
  j["x_values"] = plan.x_values();
  j["n"] = plan.n();
  j["N_min"] = plan.n_min();
  j["N_max"] = plan.n_max();
  if (plan.x_max()) {
    j["x_max"] = *plan.x_max();
    j["feasible"] = plan.feasible();
    j["feasible_N_max"] = plan.feasible_n_max().value_or(0);
  }
  return j;
}

nlohmann::ordered_json report_to_json(const FactorReport& report) {
  nlohmann::ordered_json j;
  j["N"] = report.n;
  j["method"] = method_number(report.method);
  j["s"] = report.s;
  j["stripped_twos"] = report.stripped_twos;
  j["complete"] = report.complete;
  auto candidates = nlohmann::ordered_json::array();
  for (const auto& c : report.candidates) {
    nlohmann::ordered_json cj;
    cj["ell"] = c.ell;
    cj["intensity"] = c.intensity;
    cj["interferogram"] = c.interferogram_index;
    cj["verdict"] = verdict_name(c.verdict);
    cj["flagged"] = c.flagged;
    if (c.recovered) cj["recovered"] = *c.recovered;
    candidates.push_back(std::move(cj));
  }
  j["candidates"] = std::move(candidates);
  j["confirmed_factors"] = report.confirmed_factors;
  j["reduced_N"] = report.reduced_n;
  j["probable_prime"] = report.probable_prime;
  j["x_values"] = report.x_values;
  if (report.feasible_n_max) j["feasible_N_max"] = *report.feasible_n_max;
  if (!report.prime_factors.empty()) j["prime_factors"] = report.prime_factors;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace ctes::cli
