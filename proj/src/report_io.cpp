#include "beurling/report_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "beurling/measure_io.hpp"

namespace beurling {

void writeSeriesCsv(std::ostream& out, const CheckpointSeries& series, const LogGrid& grid) {
  series.validate();
  out << "# series: " << series.label << '\n'
      << "# grid: h=" << formatDouble(grid.h()) << ",n=" << grid.n() << '\n'
      << "# checkpoints: ";
  for (std::size_t j = 0; j < series.size(); ++j) {
    out << (j ? "," : "") << formatDouble(series.logPoints[j]);
  }
  out << "\nt,value\n";
  for (std::size_t j = 0; j < series.size(); ++j) {
    out << formatDouble(series.logPoints[j]) << ',' << formatDouble(series.values[j]) << '\n';
  }
}

void saveSeriesCsv(const std::string& path, const CheckpointSeries& series, const LogGrid& grid) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  writeSeriesCsv(out, series, grid);
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

CheckpointSeries readSeriesCsv(std::istream& in) {
  CheckpointSeries series;
  std::string line;
  bool columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind("# series: ", 0) == 0) series.label = line.substr(10);
      continue;
    }
    if (!columns) {
      if (line != "t,value") throw ConfigError("series csv: expected 't,value', got '" + line + "'");
      columns = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("series csv: malformed row '" + line + "'");
    series.logPoints.push_back(parseDouble(line.substr(0, comma), "series csv t"));
    series.values.push_back(parseDouble(line.substr(comma + 1), "series csv value"));
  }
  series.validate();
  return series;
}

void Summary::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}
void Summary::add(const std::string& key, double value) { add(key, formatDouble(value)); }
void Summary::add(const std::string& key, bool value) {
  add(key, std::string(value ? "true" : "false"));
}
void Summary::add(const std::string& key, long long value) { add(key, std::to_string(value)); }

void Summary::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

void Summary::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write(out);
}

}  // namespace beurling
