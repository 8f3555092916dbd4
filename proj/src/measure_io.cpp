#include "beurling/measure_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace beurling {

namespace {

constexpr const char* kMagic = "# beurling-measure v1";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string formatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parseDouble(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  double value = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  return value;
}

long long parseInteger(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  long long value = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(what + ": '" + text + "' is not an integer");
  }
  return value;
}

void writeMeasure(std::ostream& out, const MeasureD& a) {
  out << kMagic << '\n'
      << "h=" << formatDouble(a.grid().h()) << ",n=" << a.grid().n() << '\n';
  for (Eigen::Index k = 0; k < a.size(); ++k) out << formatDouble(a[k]) << '\n';
}

MeasureD readMeasure(std::istream& in) {
  std::string line;
  std::vector<double> coeffs;
  double h = 0.0;
  long long n = -1;
  bool header = false;
  long long lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const std::string where = "measure line " + std::to_string(lineNo);
    if (!header) {
      const auto comma = s.find(',');
      if (s.rfind("h=", 0) != 0 || comma == std::string::npos ||
          s.compare(comma + 1, 2, "n=") != 0) {
        throw ConfigError(where + ": expected header 'h=<float>,n=<int>', got '" + s + "'");
      }
      h = parseDouble(s.substr(2, comma - 2), where + " (h)");
      n = parseInteger(s.substr(comma + 3), where + " (n)");
      if (!(h > 0.0) || n < 1) throw ConfigError(where + ": need h > 0 and n >= 1");
      coeffs.reserve(static_cast<std::size_t>(n));
      header = true;
      continue;
    }
    coeffs.push_back(parseDouble(s, where));
  }
  if (!header) throw ConfigError("measure: missing 'h=<float>,n=<int>' header");
  if (static_cast<long long>(coeffs.size()) != n) {
    throw ConfigError("measure: header declares n=" + std::to_string(n) + " but " +
                      std::to_string(coeffs.size()) + " coefficients follow");
  }
  MeasureD::Vector v = Eigen::Map<const MeasureD::Vector>(coeffs.data(), n);
  return MeasureD(LogGrid(h, n), std::move(v));
}

void saveMeasure(const std::string& path, const MeasureD& a) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  writeMeasure(out, a);
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

MeasureD loadMeasure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  return readMeasure(in);
}

}  // namespace beurling
