#include "beurling/checkpoint_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace beurling {

void CheckpointSeries::validate() const {
  if (logPoints.size() != values.size()) {
    throw InvalidArgument("CheckpointSeries '" + label + "': point/value count mismatch");
  }
  for (std::size_t j = 1; j < logPoints.size(); ++j) {
    if (!(logPoints[j] > logPoints[j - 1])) {
      throw InvalidArgument("CheckpointSeries '" + label + "': log points must increase strictly");
    }
  }
}

std::vector<double> ladder(double first, double last, double step) {
  if (!(step > 0.0) || last < first) throw InvalidArgument("ladder: need step > 0 and last >= first");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9));
  for (long j = 0; j <= count; ++j) out.push_back(first + static_cast<double>(j) * step);
  return out;
}

double Weight::atLog(double t) const {
  double w = 1.0;
  if (logPower != 0.0) w *= std::pow(t, logPower);
  if (xPower != 0.0) w *= std::exp(-xPower * t);
  return w;
}

std::string Weight::describe() const {
  std::ostringstream os;
  os << "log^" << logPower << "(x)/x^" << xPower;
  return os.str();
}

namespace {

template <typename Accumulate>
CheckpointSeries sampleWith(const MeasureD& a, const Weight& w, const std::vector<double>& logPoints,
                            std::string label, Accumulate&& term) {
  CheckpointSeries out;
  out.label = std::move(label);
  out.logPoints = logPoints;
  out.values.reserve(logPoints.size());
  const auto& g = a.grid();
  // One pass over the coefficients: checkpoints are sorted.
  detail::CompensatedSum<double> sum;
  Eigen::Index k = 0;
  double previous = -1.0;
  for (double t : logPoints) {
    if (t < previous) throw InvalidArgument("sample: checkpoints must be sorted");
    previous = t;
    const Eigen::Index last = detail::lastIndexAtLog(a, t, "sample");
    for (; k <= last; ++k) sum.add(term(k, g));
    out.values.push_back(sum.value() * w.atLog(t));
  }
  out.validate();
  return out;
}

}  // namespace

CheckpointSeries sampleRatio(const MeasureD& a, const Weight& w, const std::vector<double>& logPoints,
                             std::string label) {
  return sampleWith(a, w, logPoints, std::move(label),
                    [&a](Eigen::Index k, const LogGrid&) { return a[k]; });
}

CheckpointSeries sampleHarmonic(const MeasureD& a, const Weight& w,
                                const std::vector<double>& logPoints, std::string label) {
  return sampleWith(a, w, logPoints, std::move(label), [&a](Eigen::Index k, const LogGrid& g) {
    return a[k] * std::exp(-g.logPoint(k));
  });
}

namespace {

std::vector<double> tailRatios(const std::vector<double>& v, std::size_t begin) {
  std::vector<double> r;
  for (std::size_t j = begin + 1; j < v.size(); ++j) {
    if (v[j - 1] == 0.0) {
      r.push_back(v[j] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    } else {
      r.push_back(std::abs(v[j]) / std::abs(v[j - 1]));
    }
  }
  return r;
}

void requireTail(const CheckpointSeries& s, std::size_t tailK, const char* who) {
  if (tailK < 3 || s.size() < tailK) {
    throw PreconditionError(std::string(who) + ": need series length >= tailK >= 3 (length " +
                            std::to_string(s.size()) + ", tailK " + std::to_string(tailK) + ")");
  }
}

}  // namespace

TrendVerdict checkDecay(const CheckpointSeries& series, std::size_t tailK) {
  requireTail(series, tailK, "checkDecay");
  const auto& v = series.values;
  const std::size_t begin = v.size() - tailK;
  TrendVerdict out;
  out.criterion = "finite-checkpoint proxy: last " + std::to_string(tailK) +
                  " |values| strictly decreasing and final |value| < 0.5 * max |value|";
  out.ratios = tailRatios(v, begin);
  bool decreasing = true;
  for (std::size_t j = begin + 1; j < v.size(); ++j) {
    if (!(std::abs(v[j]) < std::abs(v[j - 1]))) decreasing = false;
  }
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const double final = std::abs(v.back());
  out.passed = decreasing && final < 0.5 * peak;
  std::ostringstream os;
  os << "strictly_decreasing=" << (decreasing ? 1 : 0) << " final_over_max="
     << (peak > 0.0 ? final / peak : 0.0);
  out.detail = os.str();
  return out;
}

TrendVerdict checkGrowth(const CheckpointSeries& series, std::size_t tailK, double factor) {
  requireTail(series, tailK, "checkGrowth");
  const auto& v = series.values;
  const std::size_t begin = v.size() - tailK;
  TrendVerdict out;
  std::ostringstream crit;
  crit << "finite-checkpoint proxy: last " << tailK << " values strictly increasing and final > "
       << factor << " * first inspected";
  out.criterion = crit.str();
  out.ratios = tailRatios(v, begin);
  bool increasing = true;
  for (std::size_t j = begin + 1; j < v.size(); ++j) {
    if (!(v[j] > v[j - 1])) increasing = false;
  }
  const double gain = v[begin] != 0.0 ? v.back() / v[begin] : 0.0;
  out.passed = increasing && v.back() > factor * v[begin];
  std::ostringstream os;
  os << "strictly_increasing=" << (increasing ? 1 : 0) << " final_over_first=" << gain;
  out.detail = os.str();
  return out;
}

TrendVerdict checkBounded(const CheckpointSeries& series, std::size_t tailK) {
  requireTail(series, tailK, "checkBounded");
  const auto& v = series.values;
  const std::size_t begin = v.size() - tailK;
  TrendVerdict out;
  out.criterion = "finite-checkpoint proxy: unbounded iff last " + std::to_string(tailK) +
                  " values strictly increasing";
  out.ratios = tailRatios(v, begin);
  bool increasing = true;
  for (std::size_t j = begin + 1; j < v.size(); ++j) {
    if (!(v[j] > v[j - 1])) increasing = false;
  }
  out.passed = !increasing;
  out.detail = increasing ? "trend=increasing" : "trend=not_increasing";
  return out;
}

TrendVerdict checkConvergent(const CheckpointSeries& partials, std::size_t tailK) {
  if (partials.size() < 2) throw PreconditionError("checkConvergent: need at least two points");
  partials.validate();
  // An increment at or below the rounding resolution of its partials counts
  // as zero: the partial integral has converged in double precision.
  const auto& p = partials.values;
  std::vector<double> inc;
  for (std::size_t j = 1; j < p.size(); ++j) {
    const double d = std::abs(p[j] - p[j - 1]);
    const double resolution = 64.0 * std::numeric_limits<double>::epsilon() *
                              std::max(std::abs(p[j]), std::abs(p[j - 1]));
    inc.push_back(d <= resolution ? 0.0 : d);
  }
  const std::size_t k = std::min(tailK, inc.size());
  const std::size_t begin = inc.size() - k;
  TrendVerdict out;
  out.criterion = "finite-checkpoint proxy: last " + std::to_string(k) +
                  " increments of the partial integrals strictly decrease until they reach "
                  "rounding level, and the final increment is < 0.5 * the largest";
  out.ratios = tailRatios(inc, begin);
  bool decreasing = true;
  for (std::size_t j = begin + 1; j < inc.size(); ++j) {
    if (inc[j] == 0.0) continue;
    if (!(inc[j] < inc[j - 1])) decreasing = false;
  }
  const double largest = *std::max_element(inc.begin(), inc.end());
  const bool dropped = largest == 0.0 || inc.back() < 0.5 * largest;
  out.passed = decreasing && dropped;
  std::ostringstream os;
  os << "strictly_decreasing=" << (decreasing ? 1 : 0) << " final_increment=" << inc.back()
     << " largest_increment=" << largest;
  out.detail = os.str();
  return out;
}

}  // namespace beurling
