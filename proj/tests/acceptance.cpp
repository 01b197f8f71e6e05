// Acceptance gate for the toolkit. Runs numbered end-to-end checks and
// prints exactly one line per criterion on stdout:
//
//   criterion <id> <title>: PASS|FAIL
//
// Details and timing go to stderr; the exit code is 1 if anything
// failed. Select a subset with --criteria 1,2,12 (default: all). All
// tolerances are pinned as named constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "unicycle/cperm.hpp"
#include "unicycle/cycle_enum.hpp"
#include "unicycle/exact.hpp"
#include "unicycle/experiment.hpp"
#include "unicycle/limit_law.hpp"
#include "unicycle/oracle.hpp"
#include "unicycle/plane_tree.hpp"
#include "unicycle/rng.hpp"
#include "unicycle/underlying_graph.hpp"

using namespace unicycle;

namespace {

// ---- pinned tolerances and reference values ----

// chi-square significance for sampler and profile laws (99.9th pct)
constexpr double kChiAlpha = 1e-3;
// draws per chi-square cell check
constexpr uint64_t kUniformDraws = 100'000;
// relative slack on the first-moment bound comparison (rounding only)
constexpr double kBoundSlack = 1e-9;
// pairing probability must land in [0.8, 1.25] x (6g/n^2) ...
constexpr double kPairLo = 0.8, kPairHi = 1.25;
// ... and below 2200 g/n^2 + kSigma standard errors
constexpr double kPairHardScale = 2200.0;
// standard-error multiplier for all moment checks
constexpr double kSigma = 4.0;
// main experiment shape
constexpr uint32_t kMainN = 1'000'000, kMainG = 100;
constexpr uint32_t kTrendN = 100'000, kTrendG = 30;
constexpr uint64_t kMainSamples = 10'000;
constexpr double kMainXMax = 5.0;
constexpr uint64_t kMainSeed = 20260815, kTrendSeed = 20260816;
// window means must sit within 10% of the limit intensities
constexpr double kMeanRelTol = 0.10;
constexpr double kLambda01 = 0.26065;   // limit intensity over [0, 1)
constexpr double kLambda12 = 0.92170;   // limit intensity over [1, 2)
constexpr double kLambdaK1 = 0.25;      // one-path intensity over [0, 1)
// per-window index of dispersion must stay in [0.9, 1.1]
constexpr double kDispLo = 0.9, kDispHi = 1.1;
// systole distribution checkpoints, absolute tolerance
constexpr double kSystoleAt1 = 0.22945, kSystoleAt2 = 0.69347;
constexpr double kSystoleTol = 0.02;
// shortest-cycle junction distribution, absolute tolerance
constexpr double kShortK[3] = {0.792, 0.177, 0.028};
constexpr double kShortKTol = 0.02;
// series identities must close to this precision
constexpr double kSeriesTol = 1e-12;

using Clock = std::chrono::steady_clock;

std::ostream& err() { return std::cerr; }

std::vector<std::tuple<uint64_t, uint32_t, bool>> flat(const std::vector<CycleRecord>& v) {
  std::vector<std::tuple<uint64_t, uint32_t, bool>> out;
  for (const CycleRecord& c : v) out.emplace_back(c.length, c.junctions, c.loop);
  std::sort(out.begin(), out.end());
  return out;
}

std::string canonical_key(CPermutation p) {
  canonicalize(p);
  return cycle_key(p);
}

// ---- criterion 1: exact counts vs exhaustive enumeration ----

bool criterion_counts() {
  bool ok = true;
  for (uint32_t n = 1; n <= 9; ++n) {
    for (uint32_t g = 0; 2 * g <= n; ++g) {
      BigInt counted = count_cperms_exact(n, g);
      BigInt brute(all_cperms(n, g).size());
      if (counted != brute) {
        ok = false;
        err() << "  count mismatch at n=" << n << " g=" << g << ": formula " << counted
              << " vs enumeration " << brute << "\n";
      }
    }
  }
  if (count_cperms_exact(3, 1) != 2) ok = false;
  if (count_cperms_exact(5, 1) != 20) ok = false;
  return ok;
}

// ---- criterion 2: samplers are uniform on exhaustive supports ----

bool chi_square_uniformity(const std::vector<uint64_t>& counts, const std::string& label) {
  std::vector<double> probs(counts.size(), 1.0 / static_cast<double>(counts.size()));
  ChiSquare c = chi_square_gof(counts, probs);
  err() << "  " << label << ": cells=" << counts.size() << " chi2=" << c.stat
        << " df=" << c.df << " p=" << c.p_value << "\n";
  return c.p_value > kChiAlpha;
}

bool criterion_samplers() {
  bool ok = true;
  Rng rng(22222);
  for (uint32_t n = 2; n <= 7; ++n) {
    std::vector<PlaneTree> support = all_plane_trees(n);
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < support.size(); ++i) index[support[i].word()] = i;
    std::vector<uint64_t> counts(support.size(), 0);
    for (uint64_t d = 0; d < kUniformDraws; ++d)
      ++counts.at(index.at(sample_plane_tree(n, rng).word()));
    ok &= chi_square_uniformity(counts, "trees n=" + std::to_string(n));
  }
  for (auto [n, g] : std::vector<std::pair<uint32_t, uint32_t>>{
           {3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1}, {6, 2}, {7, 1}, {7, 2}, {7, 3}}) {
    std::vector<CPermutation> support = all_cperms(n, g);
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < support.size(); ++i) index[canonical_key(support[i])] = i;
    std::vector<uint64_t> counts(support.size(), 0);
    for (uint64_t d = 0; d < kUniformDraws; ++d)
      ++counts.at(index.at(canonical_key(sample_cperm(n, g, rng))));
    ok &= chi_square_uniformity(
        counts, "cperms n=" + std::to_string(n) + " g=" + std::to_string(g));
  }
  return ok;
}

// ---- criterion 3: three-cycle expectation interval ----

bool criterion_three_cycle_interval() {
  bool ok = true;
  for (auto [n, g] : std::vector<std::pair<uint64_t, uint32_t>>{
           {1000, 10}, {10000, 30}, {100000, 100}}) {
    BigRat e = expected_cycle_count_exact(n, g, 3);
    BigRat lo = BigRat(g) - BigRat(5ull * g * g, n - 6ull * g);
    bool here = lo <= e && e <= BigRat(g);
    err() << "  n=" << n << " g=" << g << ": E N_3 = " << e.convert_to<double>()
          << ", interval [" << lo.convert_to<double>() << ", " << g << "] "
          << (here ? "ok" : "VIOLATED") << "\n";
    ok &= here;
  }
  return ok;
}

// ---- criterion 4: expectations below the first-moment bound ----

bool criterion_moment_bound() {
  bool ok = true;
  uint64_t checked = 0;
  for (uint64_t n : {100ull, 1000ull, 10000ull, 100000ull}) {
    std::vector<uint32_t> gs;
    for (uint64_t g = 2; g <= n / 8; g *= 2) gs.push_back(static_cast<uint32_t>(g));
    if (gs.empty() || gs.back() != n / 8) gs.push_back(static_cast<uint32_t>(n / 8));
    for (uint32_t g : gs) {
      for (uint32_t nu : {5u, 7u, 9u, 11u}) {
        double e = expected_cycle_count(n, g, nu);
        double b = lambda_bound(n, g, nu);
        ++checked;
        if (!(e <= b * (1.0 + kBoundSlack))) {
          ok = false;
          err() << "  bound violated at n=" << n << " g=" << g << " nu=" << nu << ": E="
                << e << " bound=" << b << "\n";
        }
      }
    }
  }
  err() << "  " << checked << " (n, g, nu) combinations checked\n";
  return ok;
}

// ---- criterion 5: pairing probability scale ----

bool criterion_pairing() {
  const uint32_t n = 300, g = 10, r = 1;
  const uint64_t samples = 1'000'000;
  Rng rng(55555);
  PairingEstimate pe = pairing_probability(n, g, r, samples, rng);
  double anchor = 6.0 * g / (static_cast<double>(n) * n);
  double hard = kPairHardScale * g / (static_cast<double>(n) * n);
  err() << "  estimate=" << pe.estimate << " se=" << pe.std_error << " hits=" << pe.hits
        << " anchor 6g/n^2=" << anchor << " hard cap=" << hard << "\n";
  bool in_band = pe.estimate >= kPairLo * anchor && pe.estimate <= kPairHi * anchor;
  bool below_hard = pe.estimate <= hard + kSigma * pe.std_error;
  if (!in_band) err() << "  estimate outside [0.8, 1.25] x anchor\n";
  if (!below_hard) err() << "  estimate above the hard cap\n";
  return in_band && below_hard;
}

// ---- criterion 6: oriented path counts on uniform trees ----

bool criterion_tree_paths() {
  const uint32_t n = 200, lmax = 12;
  const uint64_t trees = 10'000;
  Rng rng(66666);
  std::vector<double> sum(lmax + 1, 0.0), sumsq(lmax + 1, 0.0);
  for (uint64_t t = 0; t < trees; ++t) {
    PlaneTree tree = sample_plane_tree(n, rng);
    std::vector<uint64_t> c = count_oriented_paths(tree, lmax);
    for (uint32_t l = 1; l <= lmax; ++l) {
      double v = static_cast<double>(c[l]);
      sum[l] += v;
      sumsq[l] += v * v;
    }
  }
  bool ok = true;
  for (uint32_t l = 1; l <= lmax; ++l) {
    double mean = sum[l] / trees;
    double var = sumsq[l] / trees - mean * mean;
    double se = std::sqrt(std::max(var, 0.0) / trees);
    double want = BigRat(marked_path_count(n, l), catalan(n)).convert_to<double>();
    double dev = std::abs(mean - want);
    bool here = dev <= kSigma * se;
    err() << "  l=" << l << ": mean=" << mean << " expected=" << want << " dev/se="
          << (se > 0 ? dev / se : 0.0) << (here ? "" : " VIOLATED") << "\n";
    ok &= here;
  }
  return ok;
}

// ---- criterion 7: sampled profiles match the exact law ----

bool criterion_profiles() {
  bool ok = true;
  Rng rng(77777);
  for (auto [n, g] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {6, 1}, {6, 2}}) {
    ExactDistribution ex = exact_map_statistics(n, g);
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < ex.keys.size(); ++i) index[ex.keys[i]] = i;
    std::vector<uint64_t> counts(ex.keys.size(), 0);
    CountTable table(g);
    CPermSampler sampler(n + 1, g, table, SampleMode::automatic);
    uint64_t impossible = 0;
    for (uint64_t d = 0; d < kUniformDraws; ++d) {
      PipelineResult pr = run_pipeline(n, rng.next_u64(), sampler, n);
      auto it = index.find(profile_key(pr.enumeration.cycles));
      if (it == index.end())
        ++impossible;
      else
        ++counts[it->second];
    }
    std::vector<double> probs;
    probs.reserve(ex.probabilities.size());
    for (const BigRat& p : ex.probabilities) probs.push_back(p.convert_to<double>());
    ChiSquare c = chi_square_gof(counts, probs);
    err() << "  n=" << n << " g=" << g << ": profiles=" << ex.keys.size()
          << " chi2=" << c.stat << " df=" << c.df << " p=" << c.p_value
          << " impossible=" << impossible << "\n";
    ok &= impossible == 0 && c.p_value > kChiAlpha;
  }
  return ok;
}

// ---- criterion 8: kernel enumeration vs naive enumeration ----

bool criterion_kernel_vs_naive() {
  Rng rng(88888);
  for (int it = 0; it < 1000; ++it) {
    auto n = static_cast<uint32_t>(2 + rng.below(39));
    auto g = static_cast<uint32_t>(rng.below(std::min<uint32_t>(5, n / 2) + 1));
    PlaneTree tree = sample_plane_tree(n, rng);
    CountTable table(g);
    SparseCycles sigma = CPermSampler(n + 1, g, table, SampleMode::automatic).draw(rng);
    UnderlyingGraph graph = build_underlying_graph(tree, sigma);
    EnumResult res = enumerate_short_cycles(kernelize(graph), {.cap = n});
    if (flat(res.cycles) != flat(naive_cycle_enumeration(graph, n))) {
      err() << "  mismatch at instance " << it << " (n=" << n << ", g=" << g << ")\n";
      return false;
    }
  }
  return true;
}

// ---- criteria 9-11 share one large experiment ----

ExperimentConfig main_config(uint32_t n, uint32_t g, uint64_t seed) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.g = g;
  cfg.samples = kMainSamples;
  cfg.x_max = kMainXMax;
  cfg.windows = {{0.0, 1.0}, {1.0, 2.0}};
  cfg.master_seed = seed;
  cfg.workers = 0;  // one per hardware thread
  cfg.include_loops = false;
  return cfg;
}

const ExperimentSummary& main_run() {
  static const ExperimentSummary sum = [] {
    err() << "  sampling " << kMainSamples << " instances at n=" << kMainN
          << " g=" << kMainG << " (the long part)\n";
    return run_experiment(main_config(kMainN, kMainG, kMainSeed));
  }();
  return sum;
}

const ExperimentSummary& trend_run() {
  static const ExperimentSummary sum = [] {
    err() << "  sampling " << kMainSamples << " instances at n=" << kTrendN
          << " g=" << kTrendG << " (trend reference)\n";
    return run_experiment(main_config(kTrendN, kTrendG, kTrendSeed));
  }();
  return sum;
}

bool check_rel(const char* what, double got, double want, double rel) {
  double dev = std::abs(got - want);
  bool ok = dev <= rel * want;
  err() << "  " << what << ": " << got << " vs " << want << " (|dev|/ref="
        << dev / want << ")" << (ok ? "" : " VIOLATED") << "\n";
  return ok;
}

bool criterion_main_windows() {
  const ExperimentSummary& sum = main_run();
  const WindowReport& w0 = sum.window_reports.at(0);
  const WindowReport& w1 = sum.window_reports.at(1);
  bool ok = true;
  ok &= check_rel("mean count in [0,1)", w0.gof.mean, kLambda01, kMeanRelTol);
  ok &= check_rel("mean count in [1,2)", w1.gof.mean, kLambda12, kMeanRelTol);
  for (const WindowReport* w : {&w0, &w1}) {
    bool disp = w->gof.dispersion >= kDispLo && w->gof.dispersion <= kDispHi;
    err() << "  dispersion in [" << w->window.lo << "," << w->window.hi
          << "): " << w->gof.dispersion << (disp ? "" : " VIOLATED") << "\n";
    ok &= disp;
  }
  const CovarianceReport& cov = sum.covariances.at(0).report;
  bool cov_ok = std::abs(cov.covariance) <= kSigma * cov.std_error;
  err() << "  cross-window covariance: " << cov.covariance << " (se=" << cov.std_error
        << ")" << (cov_ok ? "" : " VIOLATED") << "\n";
  ok &= cov_ok;
  ok &= check_rel("one-path mean in [0,1)", w0.mean_k.at(0), kLambdaK1, kMeanRelTol);

  // the deviation from the limit must not grow with size
  const ExperimentSummary& small = trend_run();
  const WindowReport& s0 = small.window_reports.at(0);
  double dev_big = std::abs(w0.gof.mean - w0.lambda);
  double dev_small = std::abs(s0.gof.mean - s0.lambda);
  double se = std::hypot(w0.gof.mean_stderr, s0.gof.mean_stderr);
  bool trend = dev_big <= dev_small + kSigma * se;
  err() << "  trend [0,1): dev " << dev_small << " at n=" << kTrendN << " -> " << dev_big
        << " at n=" << kMainN << " (se=" << se << ")" << (trend ? "" : " VIOLATED")
        << "\n";
  ok &= trend;
  if (sum.truncated_samples > 0) {
    err() << "  " << sum.truncated_samples << " truncated samples VIOLATED\n";
    ok = false;
  }
  return ok;
}

bool criterion_systole() {
  const ExperimentSummary& sum = main_run();
  bool ok = true;
  for (auto [z, want] : std::vector<std::pair<double, double>>{{1.0, kSystoleAt1},
                                                               {2.0, kSystoleAt2}}) {
    double got = empirical_systole_cdf(sum, z);
    bool here = std::abs(got - want) <= kSystoleTol;
    err() << "  P(systole <= " << z << " L): " << got << " vs " << want
          << (here ? "" : " VIOLATED") << "\n";
    ok &= here;
  }
  return ok;
}

bool criterion_shortest_k() {
  const ExperimentSummary& sum = main_run();
  std::vector<double> dist = shortest_k_distribution(sum, 4);
  bool ok = true;
  for (uint32_t k = 1; k <= 3; ++k) {
    bool here = std::abs(dist[k] - kShortK[k - 1]) <= kShortKTol;
    err() << "  P(shortest cycle has k=" << k << "): " << dist[k] << " vs "
          << kShortK[k - 1] << (here ? "" : " VIOLATED") << "\n";
    ok &= here;
  }
  return ok;
}

// ---- criterion 12: window intensity identities ----

bool criterion_identities() {
  bool ok = true;
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0, 1}, {1, 2}, {0.5, 3}}) {
    double sum = 0.0;
    for (uint32_t k = 1; k <= 60; ++k) sum += intensity_k(x, y, k);
    double diff = std::abs(sum - intensity(x, y));
    if (diff > kSeriesTol) {
      ok = false;
      err() << "  intensity series mismatch on [" << x << "," << y << "): " << diff
            << "\n";
    }
  }
  for (uint64_t M : {10ull, 100ull, 1000ull}) {
    BigRat total = 0;
    for (const BigRat& v : lambda_k_row_exact(1, M, M - 1)) total += v;
    if (total != BigRat(1, 4)) {
      ok = false;
      err() << "  window sum for one path at M=" << M << " is not 1/4\n";
    }
  }
  for (uint32_t k = 1; k <= 3; ++k) {
    BigRat exact(BigInt(1), BigInt(2 * k) * factorial(2 * k));
    BigRat prev = -1;
    for (uint64_t M : {10ull, 100ull, 1000ull}) {
      BigRat total = 0;
      for (const BigRat& v : lambda_k_row_exact(k, M, M - 1)) total += v;
      BigRat e = abs(total - exact);
      err() << "  k=" << k << " M=" << M
            << ": window sum error=" << e.convert_to<double>() << "\n";
      if (prev >= 0 && e > prev) {
        ok = false;
        err() << "  error grew from M/10 VIOLATED\n";
      }
      prev = e;
    }
  }
  return ok;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "permutation counts match exhaustive enumeration", criterion_counts},
      {2, "tree and permutation samplers are uniform", criterion_samplers},
      {3, "three-cycle expectation interval", criterion_three_cycle_interval},
      {4, "expectations below the first-moment bound", criterion_moment_bound},
      {5, "pairing probability scale", criterion_pairing},
      {6, "oriented path counts on uniform trees", criterion_tree_paths},
      {7, "sampled profiles match the exact law", criterion_profiles},
      {8, "kernel and naive enumeration agree", criterion_kernel_vs_naive},
      {9, "window counts follow the limit Poisson law", criterion_main_windows},
      {10, "systole distribution checkpoints", criterion_systole},
      {11, "shortest-cycle junction distribution", criterion_shortest_k},
      {12, "window intensity identities", criterion_identities},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string list;
    if (arg == "--criteria" && i + 1 < argc) {
      list = argv[++i];
    } else if (arg.rfind("--criteria=", 0) == 0) {
      list = arg.substr(std::strlen("--criteria="));
    } else {
      std::cerr << "usage: " << argv[0] << " [--criteria 1,2,...]\n";
      return 2;
    }
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        selected.insert(std::stoi(tok));
      } catch (const std::exception&) {
        std::cerr << "bad criterion id: " << tok << "\n";
        return 2;
      }
    }
  }

  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    err() << "criterion " << c.id << " (" << c.title << ") running...\n";
    auto t0 = Clock::now();
    bool pass = false;
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      err() << "  exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    err() << "  took " << secs << " s\n";
    std::cout << "criterion " << c.id << " " << c.title << ": "
              << (pass ? "PASS" : "FAIL") << std::endl;
    all_pass &= pass;
  }
  return all_pass ? 0 : 1;
}
