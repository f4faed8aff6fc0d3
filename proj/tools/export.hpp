#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctes/extractor.hpp"
#include "ctes/interferogram.hpp"
#include "ctes/planner.hpp"

#include <json.hpp>

namespace ctes::cli {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// `o_xi,xi,xi_N,intensity`, one row per sample in ascending o_xi. xi_N is
/// left empty when n is unset; with s > 1 it holds xi_{N,s}.
void write_interferogram_csv(std::ostream& os, const Interferogram& ig, std::optional<std::uint64_t> n,
                             std::uint64_t s = 1);

struct CsvRow {
  double o_xi;
  double xi;
  std::optional<double> xi_n;
  double intensity;
};

/// Parses the format written by write_interferogram_csv.
std::vector<CsvRow> read_interferogram_csv(std::istream& is);

nlohmann::ordered_json plan_to_json(const InterferogramPlan& plan);
nlohmann::ordered_json report_to_json(const FactorReport& report);

}  // namespace ctes::cli
