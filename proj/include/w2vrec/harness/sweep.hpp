#pragma once

#include <w2vrec/error.hpp>
#include <w2vrec/eval/report.hpp>
#include <w2vrec/harness/config.hpp>
#include <w2vrec/harness/experiment.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace w2vrec::harness {

enum class Axis { F, C, E };

inline std::string to_string(Axis a) {
  switch (a) {
    case Axis::F: return "F";
    case Axis::C: return "C";
    case Axis::E: return "E";
  }
  return "?";
}

inline Axis parse_axis(const std::string& s) {
  if (s == "F" || s == "features") return Axis::F;
  if (s == "C" || s == "window") return Axis::C;
  if (s == "E" || s == "epochs") return Axis::E;
  throw ConfigError("unknown sweep axis: " + s);
}

// Default grids: F in 10..100 step 10, C in 5..20 step 5, E in 5..25 step 5.
inline std::vector<std::size_t> default_grid(Axis axis) {
  std::vector<std::size_t> values;
  switch (axis) {
    case Axis::F: for (std::size_t v = 10; v <= 100; v += 10) values.push_back(v); break;
    case Axis::C: for (std::size_t v = 5; v <= 20; v += 5) values.push_back(v); break;
    case Axis::E: for (std::size_t v = 5; v <= 25; v += 5) values.push_back(v); break;
  }
  return values;
}

struct SweepSpec {
  Axis axis = Axis::F;
  std::vector<std::size_t> values;  // empty: default grid
};

struct SweepPoint {
  Axis axis = Axis::F;
  std::size_t value = 0;
  eval::MetricsReport report;
};

struct SweepFailure {
  std::size_t value = 0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<SweepFailure> failures;
};

inline ExperimentConfig with_axis_value(ExperimentConfig config, Axis axis, std::size_t value) {
  switch (axis) {
    case Axis::F: config.training.features = value; break;
    case Axis::C:
      config.window_set = true;
      config.training.window_max = false;
      config.training.window = value;
      break;
    case Axis::E: config.training.epochs = value; break;
  }
  return config;
}

// One run per axis value with the other parameters fixed. A failing run is
// recorded and the sweep moves on. Each run writes into
// <output>/<axis>=<value>/ when an output directory is configured.
inline SweepResult run_sweep(const SweepSpec& spec, const ExperimentConfig& base) {
  const auto values = spec.values.empty() ? default_grid(spec.axis) : spec.values;
  if (values.empty()) throw ConfigError("sweep axis has no values");
  base.validate();
  const auto ds = load_dataset(base);

  SweepResult result;
  for (auto value : values) {
    auto config = with_axis_value(base, spec.axis, value);
    if (!base.output_dir.empty()) {
      config.output_dir =
          (std::filesystem::path(base.output_dir) / (to_string(spec.axis) + "=" + std::to_string(value))).string();
    }
    try {
      config.validate();
      auto run = run_experiment(config, ds);
      result.points.push_back({spec.axis, value, std::move(run.report)});
    } catch (const std::exception& e) {
      result.failures.push_back({value, e.what()});
    }
  }
  if (!base.output_dir.empty()) {
    std::ofstream out(std::filesystem::path(base.output_dir) / "combined.csv");
    std::vector<eval::MetricsReport> reports;
    for (const auto& p : result.points) reports.push_back(p.report);
    eval::write_report_csv(out, reports);
  }
  return result;
}

// Tidy rows "axis_value,metric,value", one file per (method, axis), keyed
// "<method>_<axis>.csv".
inline std::map<std::string, std::string> emit_plot_data(const std::vector<SweepPoint>& points) {
  if (points.empty()) throw Error("no reports to emit");
  const Axis axis = points.front().axis;
  for (const auto& p : points) {
    if (p.axis != axis) throw Error("reports span more than one sweep axis");
  }
  std::map<std::string, std::ostringstream> files;
  for (const auto& p : points) {
    std::string name = p.report.echo.method;
    for (auto& ch : name) {
      if (ch == '+') ch = 'p';
    }
    auto& out = files[name + "_" + to_string(axis) + ".csv"];
    if (out.tellp() == 0) out << "axis_value,metric,value\n";
    const auto& r = p.report;
    out << p.value << ",precision," << eval::format_number(r.precision) << '\n';
    out << p.value << ",ndcg," << eval::format_number(r.ndcg) << '\n';
    out << p.value << ",hitrate," << eval::format_number(r.hitrate) << '\n';
    out << p.value << ",coverage," << eval::format_number(r.coverage) << '\n';
  }
  std::map<std::string, std::string> out;
  for (auto& [name, stream] : files) out[name] = stream.str();
  return out;
}

// Reads a combined report CSV (as written by write_report_csv) back into
// sweep points for the given axis; the axis value comes from the F, C or E
// column.
inline std::vector<SweepPoint> read_sweep_csv(std::istream& in, Axis axis) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("method,", 0) != 0) throw FormatError("missing report CSV header");
  std::vector<SweepPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 14) throw FormatError("report CSV row needs 14 columns: " + line);
    SweepPoint p;
    p.axis = axis;
    try {
      auto& e = p.report.echo;
      e.method = f[0];
      e.arch = f[1];
      e.features = std::stoul(f[2]);
      e.window = std::stoul(f[3]);
      e.epochs = std::stoul(f[4]);
      e.neighbors = std::stoul(f[5]);
      e.k = std::stoul(f[6]);
      p.report.precision = std::stod(f[7]);
      p.report.ndcg = std::stod(f[8]);
      p.report.hitrate = std::stod(f[9]);
      p.report.coverage = std::stod(f[10]);
      p.report.train_seconds = std::stod(f[11]);
      p.report.recommend_seconds_total = std::stod(f[12]);
      p.report.recommend_seconds_per_user = std::stod(f[13]);
    } catch (const std::logic_error&) {
      throw FormatError("bad number in report CSV row: " + line);
    }
    p.value = axis == Axis::F ? p.report.echo.features : axis == Axis::C ? p.report.echo.window : p.report.echo.epochs;
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace w2vrec::harness
