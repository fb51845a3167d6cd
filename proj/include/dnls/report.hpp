#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnls/fit.hpp"

namespace dnls {

enum class SlopeCheck { none, at_least, at_most, within };

/// One measured quantity across the abscissae of a report, with the rate it
/// is tested against. at_least: slope >= target - tolerance; at_most:
/// slope <= target + tolerance; within: |slope - target| <= tolerance.
struct Channel {
  std::string name;
  std::vector<double> values;
  SlopeCheck check = SlopeCheck::none;
  double target = 0.0;
  double tolerance = 0.2;
  std::string rule;  ///< how target was obtained
  std::string note;
  std::size_t fit_begin = 0;  ///< first abscissa used in the fit
  std::optional<SlopeFit> fit;

  bool asserted() const { return check != SlopeCheck::none; }
  bool passed() const;
};

/// Scalar acceptance check: value <= limit (or >= when upper is false).
struct ScalarCheck {
  std::string name;
  double value;
  double limit;
  bool upper = true;
  bool passed() const { return upper ? value <= limit : value >= limit; }
};

/// Extra CSV written next to the main one (time series, per-order tracks).
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
  bool loglog = false;
};

struct ExperimentReport {
  std::string kind;
  nlohmann::json config;
  std::string abscissa = "h";
  std::vector<double> abscissae;
  std::vector<Channel> channels;
  std::vector<ScalarCheck> checks;
  nlohmann::json scalars = nlohmann::json::object();  ///< reported, not asserted
  std::vector<Table> tables;
  bool degenerate = false;  ///< every measurement at roundoff; slopes are meaningless
  std::optional<double> runtime_s;

  /// Fits every channel that has no fit yet. Non-positive series are floored.
  void fit_channels();
  Channel* find(const std::string& name);
  const Channel* find(const std::string& name) const;
  bool pass() const;
  std::string status() const;
  nlohmann::json to_json() const;
};

/// Writes report.json and, for format "csv", <kind>.csv, the extra tables
/// and a .gp script next to each CSV.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                  const std::string& format);

/// Header row plus rows at 17 significant digits.
void write_series_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns);

/// gnuplot script plotting columns 2.. of `csv` against column 1.
void write_plot_script(const std::filesystem::path& path, const std::string& csv_name,
                       const std::vector<std::string>& header, bool loglog);

}  // namespace dnls
