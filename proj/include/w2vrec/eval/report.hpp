#pragma once

#include <w2vrec/error.hpp>
#include <w2vrec/eval/metrics.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

namespace w2vrec::eval {

struct RunEcho {
  std::string method;
  std::string arch;
  std::size_t features = 0;  // F
  std::size_t window = 0;    // C
  std::size_t epochs = 0;    // E
  std::size_t neighbors = 0;  // N
  std::size_t k = 10;
};

struct Timings {
  double train_seconds = 0.0;
  double recommend_seconds = 0.0;
};

struct MetricsReport {
  RunEcho echo;
  std::vector<UserMetrics> users;
  double precision = 0.0;
  double ndcg = 0.0;
  double hitrate = 0.0;
  double coverage = 0.0;
  double train_seconds = 0.0;
  double recommend_seconds_total = 0.0;
  double recommend_seconds_per_user = 0.0;
};

inline MetricsReport aggregate(std::vector<UserMetrics> rows, const Timings& timings, const RunEcho& echo) {
  if (rows.empty()) throw EvaluationError("cannot aggregate an empty user set");
  MetricsReport report;
  report.echo = echo;
  std::vector<int> hits;
  std::vector<int> predicted;
  for (const auto& r : rows) {
    report.precision += r.precision;
    report.ndcg += r.ndcg;
    hits.push_back(r.hit);
    predicted.push_back(r.predicted);
  }
  const auto n = static_cast<double>(rows.size());
  report.precision /= n;
  report.ndcg /= n;
  report.hitrate = hit_rate(hits);
  report.coverage = prediction_coverage(predicted);
  report.train_seconds = timings.train_seconds;
  report.recommend_seconds_total = timings.recommend_seconds;
  report.recommend_seconds_per_user = timings.recommend_seconds / n;
  report.users = std::move(rows);
  return report;
}

// Shortest decimal text that parses back to the same double.
inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

inline constexpr const char* kReportHeader =
    "method,arch,F,C,E,N,k,precision,ndcg,hitrate,coverage,train_s,rec_s_total,rec_s_per_user";

inline void write_report_csv_row(std::ostream& out, const MetricsReport& r) {
  const auto& e = r.echo;
  out << e.method << ',' << e.arch << ',' << e.features << ',' << e.window << ',' << e.epochs << ','
      << e.neighbors << ',' << e.k << ',' << format_number(r.precision) << ',' << format_number(r.ndcg) << ','
      << format_number(r.hitrate) << ',' << format_number(r.coverage) << ',' << format_number(r.train_seconds)
      << ',' << format_number(r.recommend_seconds_total) << ',' << format_number(r.recommend_seconds_per_user)
      << '\n';
}

inline void write_report_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
  out << kReportHeader << '\n';
  for (const auto& r : reports) write_report_csv_row(out, r);
}

inline nlohmann::json report_json(const MetricsReport& r) {
  const auto& e = r.echo;
  return nlohmann::json{{"method", e.method},
                        {"arch", e.arch},
                        {"F", e.features},
                        {"C", e.window},
                        {"E", e.epochs},
                        {"N", e.neighbors},
                        {"k", e.k},
                        {"precision", r.precision},
                        {"ndcg", r.ndcg},
                        {"hitrate", r.hitrate},
                        {"coverage", r.coverage},
                        {"train_s", r.train_seconds},
                        {"rec_s_total", r.recommend_seconds_total},
                        {"rec_s_per_user", r.recommend_seconds_per_user}};
}

inline void write_user_csv(std::ostream& out, const std::vector<UserMetrics>& rows) {
  out << "user,precision,ndcg,hit,predicted\n";
  for (const auto& r : rows) {
    out << r.user << ',' << format_number(r.precision) << ',' << format_number(r.ndcg) << ',' << r.hit << ','
        << r.predicted << '\n';
  }
}

}  // namespace w2vrec::eval
