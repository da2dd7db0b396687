#pragma once

#include <w2vrec/error.hpp>

#include <zlib.h>

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace w2vrec::corpus {

struct CheckinRecord {
  std::string user;
  std::string venue;
  std::int64_t timestamp = 0;

  friend bool operator==(const CheckinRecord&, const CheckinRecord&) = default;
};

// Column positions of the three used fields within a delimited line.
// Extra columns are ignored.
struct FieldLayout {
  char delimiter = '\t';
  std::size_t user_column = 0;
  std::size_t venue_column = 1;
  std::size_t timestamp_column = 2;

  // Parses "user,venue,timestamp" style orderings, e.g. "venue,user,timestamp".
  static FieldLayout from_order(std::string_view order, char delimiter = '\t') {
    FieldLayout layout;
    layout.delimiter = delimiter;
    std::size_t column = 0;
    bool seen[3] = {false, false, false};
    std::size_t start = 0;
    while (start <= order.size()) {
      auto end = order.find(',', start);
      if (end == std::string_view::npos) end = order.size();
      const auto name = order.substr(start, end - start);
      if (name == "user") {
        layout.user_column = column;
        seen[0] = true;
      } else if (name == "venue") {
        layout.venue_column = column;
        seen[1] = true;
      } else if (name == "timestamp") {
        layout.timestamp_column = column;
        seen[2] = true;
      } else if (name != "_" && !name.empty()) {
        throw ConfigError("unknown column name in field order: " + std::string(name));
      }
      ++column;
      start = end + 1;
    }
    if (!(seen[0] && seen[1] && seen[2])) {
      throw ConfigError("field order must name user, venue and timestamp");
    }
    return layout;
  }
};

struct ParseResult {
  std::vector<CheckinRecord> records;
  std::size_t skipped = 0;
};

namespace detail {

inline std::string_view trim_cr(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

inline bool parse_line(std::string_view line, const FieldLayout& layout, CheckinRecord& out) {
  std::string_view fields[3];
  const std::size_t wanted[3] = {layout.user_column, layout.venue_column, layout.timestamp_column};
  std::size_t column = 0;
  std::size_t start = 0;
  std::size_t found = 0;
  for (;;) {
    auto end = line.find(layout.delimiter, start);
    const bool last = end == std::string_view::npos;
    if (last) end = line.size();
    for (int f = 0; f < 3; ++f) {
      if (wanted[f] == column) {
        fields[f] = line.substr(start, end - start);
        ++found;
      }
    }
    if (last) break;
    ++column;
    start = end + 1;
  }
  if (found < 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) return false;

  std::int64_t ts = 0;
  const auto* first = fields[2].data();
  const auto* last = first + fields[2].size();
  auto [ptr, ec] = std::from_chars(first, last, ts);
  if (ec != std::errc() || ptr != last || ts < 0) return false;

  out.user.assign(fields[0]);
  out.venue.assign(fields[1]);
  out.timestamp = ts;
  return true;
}

class LineParser {
 public:
  explicit LineParser(const FieldLayout& layout) : layout_(layout) {}

  void feed(std::string_view raw) {
    const auto line = trim_cr(raw);
    if (line.empty() || line.front() == '#') return;
    ++lines_;
    CheckinRecord record;
    if (parse_line(line, layout_, record)) {
      result_.records.push_back(std::move(record));
    } else {
      ++result_.skipped;
    }
  }

  ParseResult finish() {
    if (lines_ > 0 && 2 * result_.skipped > lines_) {
      throw FormatError("more than half of " + std::to_string(lines_) +
                        " lines are malformed; check the field layout");
    }
    return std::move(result_);
  }

 private:
  FieldLayout layout_;
  std::size_t lines_ = 0;
  ParseResult result_;
};

}  // namespace detail

// Blank lines and lines starting with '#' are ignored and not counted.
inline ParseResult parse_checkins(std::istream& source, const FieldLayout& layout = {}) {
  detail::LineParser parser(layout);
  std::string line;
  while (std::getline(source, line)) parser.feed(line);
  if (source.bad()) throw IoError("read error while parsing check-ins");
  return parser.finish();
}

inline ParseResult parse_checkins(std::string_view text, const FieldLayout& layout = {}) {
  std::istringstream in{std::string(text)};
  return parse_checkins(in, layout);
}

// Reads a plain or gzip-compressed check-in file.
inline ParseResult read_checkins(const std::string& path, const FieldLayout& layout = {}) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) throw IoError("cannot open check-in file: " + path);
  detail::LineParser parser(layout);
  std::string pending;
  char buffer[1 << 16];
  for (;;) {
    const int n = gzread(file, buffer, sizeof(buffer));
    if (n < 0) {
      int code = 0;
      std::string message = gzerror(file, &code);
      gzclose(file);
      throw IoError("error reading " + path + ": " + message);
    }
    if (n == 0) break;
    std::string_view chunk(buffer, static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (;;) {
      const auto nl = chunk.find('\n', start);
      if (nl == std::string_view::npos) {
        pending.append(chunk.substr(start));
        break;
      }
      if (pending.empty()) {
        parser.feed(chunk.substr(start, nl - start));
      } else {
        pending.append(chunk.substr(start, nl - start));
        parser.feed(pending);
        pending.clear();
      }
      start = nl + 1;
    }
  }
  gzclose(file);
  if (!pending.empty()) parser.feed(pending);
  return parser.finish();
}

inline void write_checkins(std::ostream& out, const std::vector<CheckinRecord>& records,
                           char delimiter = '\t') {
  for (const auto& r : records) {
    out << r.user << delimiter << r.venue << delimiter << r.timestamp << '\n';
  }
}

}  // namespace w2vrec::corpus
