#include "dnls/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace dnls {

namespace {

const char* check_name(SlopeCheck c) {
  switch (c) {
    case SlopeCheck::none: return "reported";
    case SlopeCheck::at_least: return "at_least";
    case SlopeCheck::at_most: return "at_most";
    case SlopeCheck::within: return "within";
  }
  return "?";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

bool Channel::passed() const {
  if (check == SlopeCheck::none) return true;
  if (!fit) return false;
  const double slope = fit->slope;
  switch (check) {
    case SlopeCheck::at_least: return slope >= target - tolerance;
    case SlopeCheck::at_most: return slope <= target + tolerance;
    case SlopeCheck::within: return std::abs(slope - target) <= tolerance;
    case SlopeCheck::none: break;
  }
  return true;
}

void ExperimentReport::fit_channels() {
  for (auto& c : channels) {
    if (c.fit) continue;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = c.fit_begin; i < c.values.size(); ++i)
      pts.emplace_back(abscissae[i], std::max(c.values[i], 0.0));
    if (pts.size() >= 3) c.fit = fit_loglog_slope(pts);
  }
}

Channel* ExperimentReport::find(const std::string& name) {
  for (auto& c : channels)
    if (c.name == name) return &c;
  return nullptr;
}

const Channel* ExperimentReport::find(const std::string& name) const {
  return const_cast<ExperimentReport*>(this)->find(name);
}

bool ExperimentReport::pass() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  if (degenerate) return true;
  for (const auto& c : channels)
    if (!c.passed()) return false;
  return true;
}

std::string ExperimentReport::status() const {
  if (!pass()) return "fail";
  return degenerate ? "degenerate-pass" : "pass";
}

nlohmann::json ExperimentReport::to_json() const {
  using nlohmann::json;
  json channels_j;
  channels_j["abscissa"] = abscissa;
  channels_j[abscissa] = abscissae;
  json series = json::object();
  for (const auto& c : channels) series[c.name] = c.values;
  channels_j["series"] = series;
  channels_j["scalars"] = scalars;
  json checks_j = json::object();
  for (const auto& c : checks)
    checks_j[c.name] = {{"value", c.value}, {"limit", c.limit}, {"bound", c.upper ? "upper" : "lower"},
                        {"pass", c.passed()}};
  channels_j["checks"] = checks_j;
  channels_j["status"] = status();

  json slopes = json::object();
  json exponents = json::object();
  for (const auto& c : channels) {
    if (c.fit) {
      slopes[c.name] = {{"slope", c.fit->slope}, {"intercept", c.fit->intercept}, {"r2", c.fit->r2},
                        {"warnings", c.fit->warnings}};
      if (c.fit_begin > 0) slopes[c.name]["fit_from"] = abscissae[c.fit_begin];
    }
    json e = {{"check", check_name(c.check)}};
    if (c.asserted()) {
      e["target"] = c.target;
      e["tolerance"] = c.tolerance;
      e["pass"] = degenerate || c.passed();
    }
    if (!c.rule.empty()) e["rule"] = c.rule;
    if (!c.note.empty()) e["note"] = c.note;
    exponents[c.name] = e;
  }

  json j;
  j["config"] = config;
  j["channels"] = channels_j;
  j["slopes"] = slopes;
  j["exponents"] = exponents;
  j["pass"] = pass();
  j["runtime_s"] = runtime_s ? json(*runtime_s) : json(nullptr);
  return j;
}

void write_series_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n' << std::setprecision(17);
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c][r];
    out << '\n';
  }
}

void write_plot_script(const std::filesystem::path& path, const std::string& csv_name,
                       const std::vector<std::string>& header, bool loglog) {
  auto out = open_out(path);
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  if (loglog) out << "set logscale xy\n";
  out << "set xlabel '" << header.front() << "'\n";
  out << "set terminal pngcairo size 900,600\n";
  out << "set output '" << std::filesystem::path(csv_name).replace_extension(".png").string() << "'\n";
  out << "plot";
  for (std::size_t c = 1; c < header.size(); ++c)
    out << (c > 1 ? "," : "") << " '" << csv_name << "' using 1:" << c + 1 << " with linespoints";
  out << '\n';
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                  const std::string& format) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "report.json");
    out << report.to_json().dump(2) << '\n';
  }
  if (format != "csv") return;
  for (const auto& t : report.tables) {
    write_series_csv(dir / (t.name + ".csv"), t.header, t.columns);
    write_plot_script(dir / (t.name + ".gp"), t.name + ".csv", t.header, t.loglog);
  }
  if (report.channels.empty()) return;
  std::vector<std::string> header{report.abscissa};
  std::vector<std::vector<double>> columns{report.abscissae};
  for (const auto& c : report.channels) {
    if (c.values.size() != report.abscissae.size()) continue;
    header.push_back(c.name);
    columns.push_back(c.values);
  }
  const std::string csv = report.kind + ".csv";
  write_series_csv(dir / csv, header, columns);
  write_plot_script(dir / (report.kind + ".gp"), csv, header, report.abscissa == "h");
}

}  // namespace dnls
