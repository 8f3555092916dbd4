#include "beurling/system_config.hpp"

#include <fstream>
#include <istream>
#include <map>

#include "beurling/density_expression.hpp"
#include "beurling/measure_io.hpp"

namespace beurling {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

BaseKind parseBase(const std::string& v) {
  if (v == "li") return BaseKind::Li;
  if (v == "classical") return BaseKind::ClassicalPrimes;
  if (v == "kahane") return BaseKind::Kahane;
  if (v == "custom") return BaseKind::Custom;
  throw ConfigError("base: expected li, classical, kahane or custom, got '" + v + "'");
}

}  // namespace

SystemConfig parseSystemConfig(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    const std::string s = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineNo) + ": expected key = value");
    }
    const std::string key = trim(s.substr(0, eq));
    static const char* known[] = {"base",      "grid.h",    "grid.n",     "sieve_limit",
                                  "base.density", "e.density", "r.density", "quadrature",
                                  "a",         "sigma0"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("config line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    if (!values.emplace(key, trim(s.substr(eq + 1))).second) {
      throw ConfigError("config line " + std::to_string(lineNo) + ": duplicate key '" + key + "'");
    }
  }

  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  SystemConfig config;
  SystemSpec& spec = config.spec;
  if (auto v = get("base")) spec.base = parseBase(*v);

  double h = spec.grid.h();
  long long n = spec.grid.n();
  if (auto v = get("grid.h")) h = parseDouble(*v, "grid.h");
  if (auto v = get("grid.n")) n = parseInteger(*v, "grid.n");
  if (!(h > 0.0) || n < 1) throw ConfigError("grid: need grid.h > 0 and grid.n >= 1");
  spec.grid = LogGrid(h, n);

  if (auto v = get("sieve_limit")) {
    const long long limit = parseInteger(*v, "sieve_limit");
    if (limit < 2) throw ConfigError("sieve_limit must be at least 2");
    spec.sieveLimit = static_cast<std::uint64_t>(limit);
  }

  QuadratureRule rule = QuadratureRule::Adaptive;
  if (auto v = get("quadrature")) {
    if (*v == "adaptive") rule = QuadratureRule::Adaptive;
    else if (*v == "midpoint") rule = QuadratureRule::Midpoint;
    else throw ConfigError("quadrature: expected adaptive or midpoint, got '" + *v + "'");
  }

  if (auto v = get("base.density")) {
    if (spec.base != BaseKind::Custom) throw ConfigError("base.density requires base = custom");
    spec.customBase = DensityExpression::parse(*v).toDensitySpec(rule);
    spec.customBaseText = *v;
  } else if (spec.base == BaseKind::Custom) {
    throw ConfigError("base = custom requires base.density");
  }
  if (auto v = get("e.density")) {
    spec.perturbationE = DensityExpression::parse(*v).toDensitySpec(rule);
    spec.perturbationEText = *v;
  }
  if (auto v = get("r.density")) {
    spec.perturbationR = DensityExpression::parse(*v).toDensitySpec(rule);
    spec.perturbationRText = *v;
  }
  if (auto v = get("a")) config.a = parseDouble(*v, "a");
  if (auto v = get("sigma0")) config.sigma0 = parseDouble(*v, "sigma0");
  return config;
}

SystemConfig loadSystemConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parseSystemConfig(in);
}

}  // namespace beurling
