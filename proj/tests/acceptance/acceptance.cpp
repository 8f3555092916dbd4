// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                  run every criterion
//   acceptance --criterion N    run criterion N only
//
// Exit status is 0 when every selected criterion passes.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "../unit/oracles.hpp"
#include "beurling/density_expression.hpp"
#include "beurling/fitting.hpp"
#include "beurling/identity_suite.hpp"
#include "beurling/kahane_experiments.hpp"
#include "beurling/number_systems.hpp"
#include "beurling/sieve.hpp"

using namespace beurling;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    detail << (detail.tellp() > 0 ? " " : "") << what << (ok ? "" : "[x]");
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const LogGrid kKahaneGrid(1e-4, 500001);
const std::vector<double> kLadder = ladder(5.0, 50.0, 5.0);

// Shared by criteria 3, 4 and 5; prop12Seconds() must run first to time it.
const Prop12Report& prop12() {
  static const Prop12Report report = [] {
    KahaneOptions opt;
    opt.checkpoints = kLadder;
    return prop12Pipeline(kKahaneGrid, opt);
  }();
  return report;
}

double prop12Seconds() {
  static const double seconds = [] {
    Stopwatch sw;
    prop12();
    return sw.seconds();
  }();
  return seconds;
}

MeasureD fromVector(const LogGrid& g, const oracle::Vec& v) {
  return MeasureD(g, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

// ------------------------------------------------------------------ 1

void algebra(Outcome& o) {
  Stopwatch sw;
  const auto checks = runIdentitySuite({});
  const double suiteSeconds = sw.seconds();
  for (const auto& c : checks) o.require(c.passed, c.name + "=" + num(c.deviation));

  // Independent oracle: exp* as the truncated series sum A^{*m}/m!.
  const LogGrid g(0.01, 256);
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double expWorst = 0.0, chebWorst = 0.0;
  for (int s = 0; s < 100; ++s) {
    oracle::Vec a(256);
    for (auto& x : a) x = coeff(rng);
    const MeasureD am = fromVector(g, a);
    const MeasureD env = expStar(variation(am));
    const MeasureD series = fromVector(g, oracle::seriesExp(a));
    expWorst = std::max(expWorst, maxScaledDeviation(expStar(am), series, env));
    chebWorst = std::max(chebWorst, maxScaledDeviation(applyL(expStar(am)),
                                                       convolve(applyL(am), series), applyL(env)));
  }
  o.require(expWorst <= 1e-10, "exp_vs_series=" + num(expWorst));
  o.require(chebWorst <= 1e-10, "chebyshev_vs_series=" + num(chebWorst));
  o.require(suiteSeconds < 10.0, "suite_seconds=" + num(suiteSeconds));
}

// ------------------------------------------------------------------ 2

// Worst relative error of M_li against 1 - log x at checkpoints in [1, 25];
// the denominator is max(|1 - log x|, 1) since M_li vanishes at x = e.
double mobiusLiError(double h, const std::vector<double>& points, const MeasureD** keep = nullptr) {
  static std::map<double, MeasureD> cache;
  const LogGrid g(h, static_cast<Eigen::Index>(std::llround(30.0 / h)) + 1);
  auto [it, fresh] = cache.try_emplace(h, expStar(-buildLiPi(g)));
  if (keep) *keep = &it->second;
  double worst = 0.0;
  for (double t : points) {
    const double ref = 1.0 - t;
    worst = std::max(worst, std::abs(primitiveAtLog(it->second, t) - ref) / std::max(std::abs(ref), 1.0));
  }
  return worst;
}

void closedForms(Outcome& o) {
  Stopwatch sw;
  const double h = 1e-3;
  const LogGrid g(h, 30001);
  const std::vector<double> points = ladder(1.0, 25.0, 0.5);

  const MeasureD* m = nullptr;
  const double mError = mobiusLiError(h, points, &m);
  double cellWorst = std::abs((*m)[0] - 1.0) / h;
  for (Eigen::Index k = 1; k < g.n(); ++k) cellWorst = std::max(cellWorst, std::abs((*m)[k] + h) / h);
  o.require(cellWorst <= 2.0 * h, "cell_relative_error=" + num(cellWorst));
  o.require(mError <= 5e-3, "m_li_error=" + num(mError));

  const MeasureD n = expStar(buildLiPi(g));
  double nError = 0.0;
  for (double t : points) nError = std::max(nError, std::abs(primitiveAtLog(n, t) / std::exp(t) - 1.0));
  o.require(nError <= 5e-3, "n_li_error=" + num(nError));

  const double ratio = mError / mobiusLiError(h / 2.0, points);
  o.require(ratio >= 2.0 / 1.5 && ratio <= 2.0 * 1.5, "halving_ratio=" + num(ratio));
  o.require(sw.seconds() < 5.0, "seconds=" + num(sw.seconds()));
}

// ------------------------------------------------------------------ 3

void mobiusIdentity(Outcome& o) {
  const double seconds = prop12Seconds();
  const Prop12Report& r = prop12();
  o.require(r.lemma41Passed, "max_residual=" + num(r.lemma41MaxResidual));
  o.require(r.mkPipelinesAgree, "mk_pipeline_deviation=" + num(r.mkPipelineDeviation));
  o.require(seconds < 120.0, "pipeline_seconds=" + num(seconds));
}

// ------------------------------------------------------------------ 4

void decayProxy(Outcome& o) {
  const Prop12Report& r = prop12();
  o.require(r.mkVerdict.passed, "mk_ratio{" + r.mkVerdict.detail + "}");
  o.require(r.bMinusVerdict.passed, "bminus_ratio{" + r.bMinusVerdict.detail + "}");
  o.require(r.sVerdict.passed, "s_of_x{" + r.sVerdict.detail + "}");
}

// ------------------------------------------------------------------ 5

void growth(Outcome& o) {
  const CheckpointSeries& s = prop12().nkRatio;
  bool increasing = true;
  for (std::size_t j = 1; j < s.size(); ++j) increasing = increasing && s.values[j] > s.values[j - 1];
  const double at10 = s.values[1], at50 = s.values.back();
  o.require(increasing, "strictly_increasing");
  o.require(at50 > 1.5 * at10, "n50_over_n10=" + num(at50 / at10));
}

// ------------------------------------------------------------------ 6

void mellinAlpha(Outcome& o) {
  const LogGrid longGrid(1.5e6 / static_cast<double>(1 << 20), (1 << 20) + 1);
  const std::vector<double> sigmas = logSpacedSigmas(1e-5, 1e-2, 40);
  MellinFitOptions mo;
  mo.powerWeight = 1.0;
  mo.expectedAlpha = 1.0;
  mo.alphaTolerance = 0.02;
  const FitReport fit = fitMellinExpansion(buildKahaneA(longGrid, 1.0), sigmas, mo);
  o.require(true, fit.notes);
  o.require(fit.passed, "alpha=" + num(fit.constant("alpha")) + " c1=" + num(fit.constant("c1")) +
                            " c2=" + num(fit.constant("c2")));

  const double alpha = 1.0, c1 = 0.3, c2 = -0.7;
  std::vector<double> values;
  for (double s : sigmas) {
    const double l = std::log(1.0 / (s - 1.0));
    values.push_back(alpha * std::log(l) + c1 + c2 / l);
  }
  const FitReport synthetic = fitMellinModel(sigmas, values, 1.0, 1e-3);
  const double gap = std::max({std::abs(synthetic.constant("alpha") - alpha),
                               std::abs(synthetic.constant("c1") - c1),
                               std::abs(synthetic.constant("c2") - c2)});
  o.require(gap <= 1e-3, "synthetic_gap=" + num(gap));
}

// ------------------------------------------------------------------ 7

void deHaan(Outcome& o) {
  const LogGrid longGrid(1.5e6 / static_cast<double>(1 << 20), (1 << 20) + 1);
  const std::vector<double> sigmas = logSpacedSigmas(1e-5, 1e-2, 40);
  const MellinSample b = sampleMellin(expStar(buildKahaneA(longGrid, 1.0)), sigmas, 1.0);
  const FitReport mellinSide = fitMellinLogModel(b.sigmas, b.values);
  const CheckpointSeries harmonic =
      sampleHarmonic(buildBpm(kKahaneGrid, +1), Weight::one(), ladder(10.0, 50.0, 5.0));
  const DeHaanConsistency dh = deHaanConsistency(fitDeHaan(harmonic), mellinSide);
  o.require(dh.b1RelativeGap <= 0.05, "b1_mellin=" + num(dh.b1Mellin) + " b1_checkpoint=" +
                                          num(dh.b1Checkpoint) + " b1_gap=" + num(dh.b1RelativeGap));
  o.require(dh.interceptRelativeGap <= 0.10, "intercept_gap=" + num(dh.interceptGap) + " b1_gamma=" +
                                                 num(dh.expectedInterceptGap) +
                                                 " relative=" + num(dh.interceptRelativeGap));
}

// ------------------------------------------------------------------ 8

void classical(Outcome& o) {
  const std::uint64_t limit = 1'000'000;
  const LogGrid g(1e-3, 15001);
  const ClassicalPrimes cp = buildClassicalPrimes(g, limit);

  // Independent count by trial division: pi(floor(limit^{1/k})) for each k.
  std::vector<std::uint64_t> byExponent(1, 0);
  for (unsigned k = 1; oracle::integerRoot(limit, k) >= 2; ++k) {
    const std::uint64_t root = oracle::integerRoot(limit, k);
    std::uint64_t count = 0;
    for (std::uint64_t p = 2; p <= root; ++p) count += oracle::isPrime(p) ? 1 : 0;
    byExponent.push_back(count);
  }
  std::uint64_t lcm = 1;
  for (std::uint64_t k = 1; k < byExponent.size(); ++k) lcm = std::lcm(lcm, k);
  std::uint64_t scaled = 0;  // lcm * sum_k count_k / k
  for (std::uint64_t k = 1; k < byExponent.size(); ++k) scaled += byExponent[k] * (lcm / k);
  const std::uint64_t d = std::gcd(scaled, lcm);
  const auto [num0, den0] = cp.census.totalAsFraction();
  o.require(cp.census.countByExponent == byExponent, "counts_by_exponent");
  o.require(num0 == scaled / d && den0 == lcm / d,
            "pi0=" + std::to_string(num0) + "/" + std::to_string(den0) + " oracle=" +
                std::to_string(scaled / d) + "/" + std::to_string(lcm / d));

  // Lattice masses snapped to multiples of 1/lcm must total the same rational.
  std::uint64_t snapped = 0;
  double snapWorst = 0.0;
  for (Eigen::Index k = 0; k < g.n(); ++k) {
    const double v = cp.pi[k] * static_cast<double>(lcm);
    snapWorst = std::max(snapWorst, std::abs(v - std::round(v)));
    snapped += static_cast<std::uint64_t>(std::llround(v));
  }
  o.require(snapped == scaled && snapWorst < 0.25, "lattice_mass_exact");

  Stopwatch sw;
  const std::uint64_t pi8 = countPrimes(100'000'000);
  const double seconds = sw.seconds();
  o.require(pi8 == 5'761'455, "pi(1e8)=" + std::to_string(pi8));
  o.require(seconds < 10.0, "sieve_seconds=" + num(seconds));
}

// ------------------------------------------------------------------ 9

MeasureD benchInput(Eigen::Index n) {
  const LogGrid g(50.0 / static_cast<double>(n - 1), n);
  return -buildKahanePi(g);
}

std::optional<std::string> readFile(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void performance(Outcome& o) {
  {
    const MeasureD a = benchInput(1 << 20);
    Stopwatch sw;
    const MeasureD e = expStar(a, Algorithm::Fft);
    const double seconds = sw.seconds();
    o.require(e.coeffs().allFinite() && seconds < 60.0, "fft_2^20_seconds=" + num(seconds));
  }
  {
    const MeasureD a = benchInput(1 << 12);
    const double dev = maxScaledDeviation(expStar(a, Algorithm::Fft), expStar(a, Algorithm::Direct),
                                          expStar(variation(a), Algorithm::Direct));
    o.require(dev <= 1e-8, "fft_vs_recurrence_2^12=" + num(dev));
  }

  const fs::path dir = fs::temp_directory_path() / "beurling_acceptance_bench";
  fs::remove_all(dir);
  const std::string cmd = std::string(BEURLING_CLI) + " bench --out " + dir.string() + " > " +
                          (fs::temp_directory_path() / "beurling_acceptance_bench.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  const auto csv = readFile(dir / "bench.csv");
  o.require(WIFEXITED(status) && csv.has_value(), "bench_ran");
  if (!csv) return;

  // Least-squares slope of log seconds on log n over the FFT rows.
  std::istringstream lines(*csv);
  std::string line;
  std::vector<double> x, y;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
    std::istringstream fields(line);
    std::string n, alg, sec;
    std::getline(fields, n, ',');
    std::getline(fields, alg, ',');
    std::getline(fields, sec, ',');
    if (alg != "fft") continue;
    x.push_back(std::log(std::stod(n)));
    y.push_back(std::log(std::stod(sec)));
  }
  o.require(x.size() >= 3, "fft_rows=" + std::to_string(x.size()));
  if (x.size() < 3) return;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  const double slope = sxy / sxx;
  o.require(slope < 1.5, "fitted_exponent=" + num(slope));
}

// ------------------------------------------------------------------ 10

void theorem1(Outcome& o) {
  HypothesisOptions opt;
  opt.checkpoints = kLadder;

  SystemSpec kahane;
  kahane.base = BaseKind::Kahane;
  kahane.grid = kKahaneGrid;
  const HypothesisReport kr = hypothesisReport(kahane, opt);
  o.require(kr.eVerdict.passed, "kahane_i{" + kr.eVerdict.detail + "}");
  o.require(kr.rVerdict.passed, "kahane_ii{" + kr.rVerdict.detail + "}");
  o.require(kr.m0Verdict.passed, "kahane_iii{" + kr.m0Verdict.detail + "}");
  BuildOptions build;
  build.verifyInverse = false;
  const NumberSystem sys = buildSystem(kahane, build);
  const TrendVerdict conclusion = checkDecay(sampleRatio(sys.m, Weight::invX(), kLadder));
  o.require(conclusion.passed, "kahane_m_over_x{" + conclusion.detail + "}");

  SystemSpec violating;
  violating.grid = kKahaneGrid;
  violating.perturbationE = DensityExpression::parse("indicator(2)/log(u)").toDensitySpec();
  const HypothesisReport vr = hypothesisReport(violating, opt);
  o.require(!vr.eVerdict.passed, "violating_i_rejected{" + vr.eVerdict.detail + "}");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "convolution algebra identities", algebra},
    {2, "li closed forms and convergence order", closedForms},
    {3, "M_K against B- / x through independent pipelines", mobiusIdentity},
    {4, "decay of M_K, B- and S", decayProxy},
    {5, "growth of N_K(x) / x", growth},
    {6, "Mellin expansion of dA", mellinAlpha},
    {7, "de Haan consistency of dB+", deHaan},
    {8, "classical prime-power census and sieve", classical},
    {9, "FFT performance and scaling", performance},
    {10, "hypothesis harness discriminates", theorem1},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance criteria");
  std::optional<int> only;
  app.add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& c : kCriteria) {
    if (only && *only != c.id) continue;
    Outcome o;
    Stopwatch sw;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.passed;
    std::cout << "criterion " << c.id << ": " << (o.passed ? "PASS" : "FAIL") << " - " << c.title << " ("
              << num(sw.seconds()) << " s) " << o.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
