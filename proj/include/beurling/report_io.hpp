#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "beurling/checkpoint_series.hpp"

namespace beurling {

/// Series CSV. Column order is fixed: t (= log x), value.
///
///     # series: <label>
///     # grid: h=<float>,n=<int>
///     # checkpoints: t1,t2,...
///     t,value
///     <t1>,<v1>
///
/// Numbers use 17 significant digits; output depends only on the inputs.
void writeSeriesCsv(std::ostream& out, const CheckpointSeries& series, const LogGrid& grid);
void saveSeriesCsv(const std::string& path, const CheckpointSeries& series, const LogGrid& grid);
/// Reads the rows back; the label comes from the "# series:" header.
CheckpointSeries readSeriesCsv(std::istream& in);

/// Ordered key=value lines.
class Summary {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, bool value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(std::ostream& out) const;
  void save(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace beurling
