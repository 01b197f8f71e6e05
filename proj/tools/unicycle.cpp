// Command line front end: instance dumps, experiment runs, limit-law
// evaluation, validation suites, and exhaustive small-case oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unicycle/cperm.hpp"
#include "unicycle/cycle_enum.hpp"
#include "unicycle/exact.hpp"
#include "unicycle/experiment.hpp"
#include "unicycle/limit_law.hpp"
#include "unicycle/oracle.hpp"
#include "unicycle/plane_tree.hpp"
#include "unicycle/rng.hpp"
#include "unicycle/underlying_graph.hpp"

namespace {

using nlohmann::json;
using namespace unicycle;

void emit(const json& j, const std::string& path) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

SampleMode parse_mode(const std::string& s) {
  if (s == "exact") return SampleMode::exact;
  if (s == "log") return SampleMode::log_domain;
  return SampleMode::automatic;
}

json cycles_to_json(const std::vector<CycleRecord>& cycles) {
  json arr = json::array();
  for (const CycleRecord& c : cycles)
    arr.push_back({{"length", c.length}, {"junctions", c.junctions}, {"loop", c.loop}});
  return arr;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  uint32_t n = 0;
  uint32_t g = 0;
  uint64_t seed = 1;
  double x_max = 5.0;
  uint64_t cap = 0;  // 0: ceil(x_max * L)
  uint64_t max_cycles = 1'000'000;
  std::string mode = "auto";
  std::string diameter;  // empty: skip
  bool terse = false;
  std::string output;
};

int cmd_sample(const SampleArgs& a) {
  double L = 0.0;
  if (a.g > 0) L = ScalingParams(a.n, a.g).L;
  uint64_t cap = a.cap;
  if (cap == 0)
    cap = a.g == 0 ? 1 : std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(a.x_max * L)));

  SampleMode mode = parse_mode(a.mode);
  bool exact_mode =
      mode == SampleMode::exact || (mode == SampleMode::automatic && a.n + 1 <= 2000);
  CountTable table(a.g, exact_mode);
  CPermSampler sampler(a.n + 1, a.g, table, mode);
  PipelineResult pr = run_pipeline(a.n, a.seed, sampler, cap, a.max_cycles);

  json out{{"n", a.n},         {"g", a.g},
           {"seed", a.seed},   {"cap", cap},
           {"L", L},           {"truncated", pr.enumeration.truncated}};

  json tree{{"edges", pr.tree.n_edges()}};
  if (!a.terse) tree["word"] = pr.tree.word();
  out["tree"] = std::move(tree);

  if (!a.terse) {
    json sig = json::array();
    for (const auto& cyc : pr.sigma.cycles) sig.push_back(cyc);
    out["sigma"] = std::move(sig);
  }

  json graph{{"vertices", pr.graph.n_classes()},
             {"edge_count", pr.graph.n_edges()},
             {"cyclomatic", pr.graph.cyclomatic()}};
  if (!a.terse) {
    json edges = json::array();
    for (const GraphEdge& e : pr.graph.edges())
      edges.push_back({e.u, e.v, e.tree_u, e.tree_v});
    graph["edges"] = std::move(edges);
  }
  out["graph"] = std::move(graph);

  json kernel{{"vertices", pr.kernel.n_vertices()}, {"edge_count", pr.kernel.n_edges()}};
  if (!a.terse) {
    json edges = json::array();
    for (const KernelEdge& e : pr.kernel.edges())
      edges.push_back({{"u", e.u},
                       {"v", e.v},
                       {"weight", e.weight},
                       {"internal_junctions", e.internal_junctions},
                       {"tree_end_u", e.tree_end_u},
                       {"tree_end_v", e.tree_end_v}});
    kernel["edges"] = std::move(edges);
  }
  out["kernel"] = std::move(kernel);
  out["cycles"] = cycles_to_json(pr.enumeration.cycles);

  if (!a.diameter.empty()) {
    DiameterMode dm = a.diameter == "exact"   ? DiameterMode::exact
                      : a.diameter == "sweep" ? DiameterMode::double_sweep
                      : pr.graph.n_classes() <= 100000 ? DiameterMode::exact
                                                       : DiameterMode::double_sweep;
    DiameterEstimate de = diameter_estimate(pr.graph, dm);
    out["diameter"] = json{{"value", de.value}, {"exact", de.exact}};
    if (L > 0.0) out["diameter"]["rescaled"] = static_cast<double>(de.value) / L;
  }

  emit(out, a.output);
  return 0;
}

// ------------------------------------------------------------------- run

struct RunArgs {
  ExperimentConfig cfg;
  std::vector<std::pair<double, double>> windows;
  std::string mode = "auto";
  std::string format = "json";
  int workers = -1;  // -1: env or 1
  bool quiet = false;
};

uint32_t workers_from_env() {
  const char* env = std::getenv("UNICYCLE_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  long v = std::strtol(env, nullptr, 10);
  if (v < 0) throw std::invalid_argument("UNICYCLE_WORKERS must be >= 0");
  return static_cast<uint32_t>(v);
}

int cmd_run(RunArgs& a) {
  ExperimentConfig& cfg = a.cfg;
  cfg.mode = parse_mode(a.mode);
  cfg.format = a.format == "csv" ? OutputFormat::csv : OutputFormat::json;
  cfg.workers = a.workers >= 0 ? static_cast<uint32_t>(a.workers) : workers_from_env();
  if (a.windows.empty()) a.windows = {{0.0, 1.0}, {1.0, 2.0}};
  cfg.windows.clear();
  for (auto [lo, hi] : a.windows) cfg.windows.push_back({lo, hi});
  validate(cfg);

  ExperimentSummary sum = run_experiment(cfg);

  json windows = json::array();
  for (const WindowReport& wr : sum.window_reports) {
    json w{{"lo", wr.window.lo},
           {"hi", wr.window.hi},
           {"lambda", wr.lambda},
           {"mean", wr.gof.mean},
           {"mean_stderr", wr.gof.mean_stderr},
           {"dispersion", wr.gof.dispersion},
           {"chi_square", wr.gof.chi_square},
           {"df", wr.gof.df},
           {"p_value", wr.gof.p_value},
           {"lambda_k", wr.lambda_k},
           {"mean_k", wr.mean_k},
           {"mean_k_stderr", wr.mean_k_stderr}};
    windows.push_back(std::move(w));
  }
  json covs = json::array();
  for (const CrossWindowCovariance& cv : sum.covariances)
    covs.push_back({{"first", cv.first},
                    {"second", cv.second},
                    {"covariance", cv.report.covariance},
                    {"std_error", cv.report.std_error}});
  json systole = json::array();
  for (const SystolePoint& sp : sum.systole_points)
    systole.push_back({{"z", sp.z}, {"empirical", sp.empirical}, {"limit", sp.limit}});
  json shortest = json::array();
  for (const ShortestKPoint& kp : sum.shortest_k_points)
    shortest.push_back({{"k", kp.k}, {"empirical", kp.empirical}, {"limit", kp.limit}});

  json out{{"n", cfg.n},
           {"g", cfg.g},
           {"samples", cfg.samples},
           {"master_seed", cfg.master_seed},
           {"L", sum.L},
           {"cap", sum.cap},
           {"include_loops", cfg.include_loops},
           {"truncated_samples", sum.truncated_samples},
           {"samples_with_cycle", sum.samples_with_cycle},
           {"windows", std::move(windows)},
           {"covariances", std::move(covs)},
           {"systole", std::move(systole)},
           {"shortest_k", std::move(shortest)}};
  if (!cfg.output_path.empty()) out["output"] = cfg.output_path;

  if (!a.quiet) std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- theory

struct TheoryArgs {
  std::vector<double> lambda;        // x y
  std::vector<double> lambda_k;      // x y k
  std::vector<uint64_t> window_term; // k m M
  std::vector<uint64_t> window_row;  // k M m_max
  double systole = -1.0;
  std::vector<double> systole_grid;  // z_max steps
  int pk = 0;
  int pk_all = 0;
};

int cmd_theory(const TheoryArgs& a) {
  json out;
  if (!a.lambda.empty()) out["lambda"] = intensity(a.lambda[0], a.lambda[1]);
  if (!a.lambda_k.empty()) {
    auto k = static_cast<uint32_t>(a.lambda_k[2]);
    out["lambda_k"] = intensity_k(a.lambda_k[0], a.lambda_k[1], k);
  }
  if (!a.window_term.empty()) {
    auto k = static_cast<uint32_t>(a.window_term[0]);
    uint64_t m = a.window_term[1], M = a.window_term[2];
    out["window_term"] = lambda_k_m(m, k, M);
    out["window_term_exact"] = lambda_k_m_exact(m, k, M).str();
  }
  if (!a.window_row.empty()) {
    auto k = static_cast<uint32_t>(a.window_row[0]);
    uint64_t M = a.window_row[1], m_max = a.window_row[2];
    json row = json::array();
    for (const BigRat& v : lambda_k_row_exact(k, M, m_max))
      row.push_back(static_cast<double>(v));
    out["window_row"] = std::move(row);
  }
  if (a.systole >= 0.0) out["systole_cdf"] = systole_cdf(a.systole);
  if (!a.systole_grid.empty()) {
    double z_max = a.systole_grid[0];
    auto steps = static_cast<uint32_t>(a.systole_grid[1]);
    if (z_max <= 0.0 || steps == 0)
      throw std::invalid_argument("systole grid needs z_max > 0 and steps >= 1");
    json grid = json::array();
    for (uint32_t i = 1; i <= steps; ++i) {
      double z = z_max * i / steps;
      grid.push_back({{"z", z}, {"cdf", systole_cdf(z)}});
    }
    out["systole_grid"] = std::move(grid);
  }
  if (a.pk > 0) out["pk"] = shortest_cycle_k_prob(static_cast<uint32_t>(a.pk));
  if (a.pk_all > 0) {
    json pk = json::array();
    for (int k = 1; k <= a.pk_all; ++k)
      pk.push_back(shortest_cycle_k_prob(static_cast<uint32_t>(k)));
    out["pk_all"] = std::move(pk);
  }
  if (out.is_null()) throw std::invalid_argument("theory: no quantity requested");
  emit(out, "");
  return 0;
}

// -------------------------------------------------------------- validate

struct CheckList {
  json checks = json::array();
  uint64_t failed = 0;

  void add(const std::string& name, bool pass, json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    checks.push_back(std::move(detail));
    if (!pass) ++failed;
  }
};

void suite_counters(CheckList& out) {
  uint64_t cases = 0, mismatches = 0;
  json first_bad;
  for (uint32_t n = 1; n <= 9; ++n) {
    for (uint32_t g = 0; 2 * g + 1 <= n; ++g) {
      BigInt counted = count_cperms_exact(n, g);
      auto brute = static_cast<uint64_t>(all_cperms(n, g).size());
      ++cases;
      if (counted != brute && first_bad.is_null())
        first_bad = {{"n", n}, {"g", g}, {"counted", counted.str()}, {"brute", brute}};
      if (counted != brute) ++mismatches;
    }
  }
  json detail{{"cases", cases}, {"mismatches", mismatches}};
  if (!first_bad.is_null()) detail["first_mismatch"] = first_bad;
  out.add("count_vs_brute_force", mismatches == 0, detail);

  out.add("h_3_1", count_cperms_exact(3, 1) == 2, {{"value", count_cperms_exact(3, 1).str()}});
  out.add("h_5_1", count_cperms_exact(5, 1) == 20, {{"value", count_cperms_exact(5, 1).str()}});

  double worst = 0.0;
  for (auto [n, g] : std::vector<std::pair<uint64_t, uint32_t>>{
           {9, 3}, {25, 7}, {101, 20}, {1001, 30}}) {
    double ref = log_bigint(count_cperms_exact(n, g));
    double got = count_cperms_log(n, g);
    worst = std::max(worst, std::fabs(got - ref) / std::max(1.0, std::fabs(ref)));
  }
  out.add("log_count_agreement", worst < 1e-9, {{"worst_relative_error", worst}});
}

void suite_samplers(CheckList& out) {
  // quick versions of the uniformity checks; pass below the 99.9th
  // percentile, i.e. p > 0.001
  {
    auto trees = all_plane_trees(6);
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < trees.size(); ++i) index[trees[i].word()] = i;
    std::vector<uint64_t> counts(trees.size(), 0);
    Rng rng(647);
    const uint64_t draws = 20000;
    for (uint64_t i = 0; i < draws; ++i) ++counts[index.at(sample_plane_tree(6, rng).word())];
    std::vector<double> probs(trees.size(), 1.0 / trees.size());
    ChiSquare cs = chi_square_gof(counts, probs);
    out.add("plane_tree_uniformity_n6", cs.p_value > 0.001,
            {{"cells", trees.size()}, {"draws", draws}, {"chi_square", cs.stat},
             {"df", cs.df}, {"p_value", cs.p_value}});
  }
  for (uint32_t g : {1u, 2u, 3u}) {
    auto perms = all_cperms(7, g);
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < perms.size(); ++i) index[cycle_key(perms[i])] = i;
    std::vector<uint64_t> counts(perms.size(), 0);
    Rng rng(1000 + g);
    const uint64_t draws = 20000;
    for (uint64_t i = 0; i < draws; ++i) {
      CPermutation p = sample_cperm(7, g, rng);
      ++counts[index.at(cycle_key(p))];
    }
    std::vector<double> probs(perms.size(), 1.0 / perms.size());
    ChiSquare cs = chi_square_gof(counts, probs);
    out.add("cperm_uniformity_n7_g" + std::to_string(g), cs.p_value > 0.001,
            {{"cells", perms.size()}, {"draws", draws}, {"chi_square", cs.stat},
             {"df", cs.df}, {"p_value", cs.p_value}});
  }
}

void suite_kernel(CheckList& out) {
  Rng rng(4242);
  uint64_t cases = 200, bad_cycles = 0, bad_shape = 0;
  json first_bad;
  for (uint64_t it = 0; it < cases; ++it) {
    auto n = static_cast<uint32_t>(2 + rng.below(39));
    auto g_hi = std::min<uint32_t>(5, n / 2);
    auto g = static_cast<uint32_t>(rng.below(g_hi + 1));
    PlaneTree tree = sample_plane_tree(n, rng);
    SparseCycles sigma = CPermSampler(n + 1, g, CountTable(g), SampleMode::automatic).draw(rng);
    UnderlyingGraph graph = build_underlying_graph(tree, sigma);
    if (graph.n_classes() != n + 1 - 2 * g || graph.cyclomatic() != 2 * g) {
      ++bad_shape;
      continue;
    }
    Kernel kernel = kernelize(graph);
    EnumResult res = enumerate_short_cycles(kernel, {.cap = n});
    std::vector<CycleRecord> naive = naive_cycle_enumeration(graph, n);
    bool same = res.cycles.size() == naive.size();
    for (size_t i = 0; same && i < naive.size(); ++i)
      same = res.cycles[i].length == naive[i].length &&
             res.cycles[i].junctions == naive[i].junctions &&
             res.cycles[i].loop == naive[i].loop;
    if (!same) {
      ++bad_cycles;
      if (first_bad.is_null())
        first_bad = {{"n", n}, {"g", g}, {"kernel", profile_key(res.cycles)},
                     {"naive", profile_key(naive)}};
    }
  }
  json detail{{"cases", cases}, {"shape_failures", bad_shape}, {"cycle_mismatches", bad_cycles}};
  if (!first_bad.is_null()) detail["first_mismatch"] = first_bad;
  out.add("kernel_vs_naive", bad_shape == 0 && bad_cycles == 0, detail);
}

void suite_lemmas(CheckList& out) {
  // expected 3-cycle count within [g - 5g^2/(n-6g), g]
  for (auto [n, g] : std::vector<std::pair<uint64_t, uint32_t>>{
           {1000, 10}, {10000, 30}, {100000, 100}}) {
    double value = expected_cycle_count(n, g, 3);
    double lo = g - 5.0 * g * g / (static_cast<double>(n) - 6.0 * g);
    bool pass = value >= lo - 1e-9 * g && value <= g + 1e-9 * g;
    out.add("three_cycle_mean_interval_n" + std::to_string(n), pass,
            {{"value", value}, {"lower", lo}, {"upper", g}});
  }

  // first-moment bound for longer cycles over a sweep of (n, g, nu)
  {
    uint64_t cases = 0, violations = 0;
    for (uint64_t n : {100, 1000, 10000}) {
      for (uint32_t g = 2; g <= n / 8; g *= 2) {
        for (uint32_t nu : {5u, 7u, 9u, 11u}) {
          double value = expected_cycle_count(n, g, nu);
          double bound = lambda_bound(n, g, nu);
          ++cases;
          if (value > bound * (1.0 + 1e-12) + 1e-15) ++violations;
        }
      }
    }
    out.add("cycle_mean_bound_sweep", violations == 0,
            {{"cases", cases}, {"violations", violations}});
  }

  // mean oriented-path counts over uniform trees vs the marked-path formula
  {
    const uint32_t n = 200, cap = 12;
    const uint64_t trees = 2000;
    Rng rng(99);
    std::vector<double> sum(cap + 1, 0.0), sum_sq(cap + 1, 0.0);
    for (uint64_t i = 0; i < trees; ++i) {
      PlaneTree t = sample_plane_tree(n, rng);
      std::vector<uint64_t> c = count_oriented_paths(t, cap);
      for (uint32_t l = 1; l <= cap; ++l) {
        sum[l] += static_cast<double>(c[l]);
        sum_sq[l] += static_cast<double>(c[l]) * static_cast<double>(c[l]);
      }
    }
    double worst_sigmas = 0.0;
    for (uint32_t l = 1; l <= cap; ++l) {
      double mean = sum[l] / trees;
      double var = sum_sq[l] / trees - mean * mean;
      double se = std::sqrt(var / trees);
      double want = static_cast<double>(BigRat(marked_path_count(n, l)) / BigRat(catalan(n)));
      worst_sigmas = std::max(worst_sigmas, std::fabs(mean - want) / se);
    }
    out.add("tree_path_count_mean", worst_sigmas < 4.0,
            {{"trees", trees}, {"worst_sigmas", worst_sigmas}});
  }

  // pair-in-same-cycle probability vs the 6g/n^2 asymptotic
  {
    Rng rng(7);
    PairingEstimate est = pairing_probability(300, 10, 1, 100000, rng);
    double target = 6.0 * 10 / (300.0 * 300.0);
    bool pass = est.estimate >= 0.8 * target - 4.0 * est.std_error &&
                est.estimate <= 1.25 * target + 4.0 * est.std_error &&
                est.estimate <= 2200.0 * 10 / (300.0 * 300.0) + 4.0 * est.std_error;
    out.add("pairing_probability_scale", pass,
            {{"estimate", est.estimate}, {"std_error", est.std_error},
             {"target", target}, {"hits", est.hits}});
  }
}

int cmd_validate(const std::string& suite) {
  CheckList list;
  if (suite == "counters" || suite == "all") suite_counters(list);
  if (suite == "samplers" || suite == "all") suite_samplers(list);
  if (suite == "kernel" || suite == "all") suite_kernel(list);
  if (suite == "lemmas" || suite == "all") suite_lemmas(list);
  json out{{"suite", suite},
           {"checks", list.checks},
           {"total", list.checks.size()},
           {"failed", list.failed}};
  emit(out, "");
  return list.failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string what;
  uint32_t n = 5;
  uint32_t g = 1;
  uint32_t l1 = 2, l2 = 2;
  uint64_t cap = 12;
  uint64_t seed = 1;
};

int cmd_oracle(const OracleArgs& a) {
  json out{{"what", a.what}};
  if (a.what == "trees") {
    auto trees = all_plane_trees(a.n);
    out["n"] = a.n;
    out["count"] = trees.size();
    json words = json::array();
    for (const PlaneTree& t : trees) words.push_back(t.word());
    out["words"] = std::move(words);
  } else if (a.what == "cperms") {
    auto perms = all_cperms(a.n, a.g);
    out["n"] = a.n;
    out["g"] = a.g;
    out["count"] = perms.size();
    json keys = json::array();
    for (const CPermutation& p : perms) keys.push_back(cycle_key(p));
    out["keys"] = std::move(keys);
  } else if (a.what == "map-stats") {
    ExactDistribution dist = exact_map_statistics(a.n, a.g);
    out["n"] = a.n;
    out["g"] = a.g;
    out["total"] = dist.total;
    json profiles = json::array();
    for (size_t i = 0; i < dist.keys.size(); ++i)
      profiles.push_back({{"profile", dist.keys[i]},
                          {"count", dist.counts[i]},
                          {"probability", dist.probabilities[i].str()},
                          {"p", static_cast<double>(dist.probabilities[i])}});
    out["profiles"] = std::move(profiles);
  } else if (a.what == "path-pairs") {
    PathPairCounts c = count_disjoint_path_pairs(a.n, a.l1, a.l2);
    out["n"] = a.n;
    out["l1"] = a.l1;
    out["l2"] = a.l2;
    out["pairs"] = c.pairs.str();
    out["bound"] = c.bound.str();
    out["ratio"] = static_cast<double>(BigRat(c.pairs) / BigRat(c.bound));
  } else if (a.what == "union-shapes") {
    UnionShapeCounts c = count_path_union_shapes(a.l1, a.l2);
    out["l1"] = a.l1;
    out["l2"] = a.l2;
    out["shapes"] = c.shapes;
    out["bound"] = c.bound;
  } else if (a.what == "walks") {
    Rng rng(a.seed);
    PlaneTree tree = sample_plane_tree(a.n, rng);
    SparseCycles sigma =
        CPermSampler(a.n + 1, a.g, CountTable(a.g), SampleMode::automatic).draw(rng);
    UnderlyingGraph graph = build_underlying_graph(tree, sigma);
    uint64_t walks = count_primitive_nonsimple_walks(graph, a.cap);
    std::vector<CycleRecord> cycles = naive_cycle_enumeration(graph, a.cap);
    out["n"] = a.n;
    out["g"] = a.g;
    out["cap"] = a.cap;
    out["seed"] = a.seed;
    out["primitive_nonsimple_walks"] = walks;
    out["simple_cycles"] = cycles.size();
  }
  emit(out, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform unicellular maps: samplers, cycle statistics, limit law"};
  app.require_subcommand(1);

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "sample one instance and dump it as JSON");
  sample->add_option("--n", sa.n, "tree edge count")->required();
  sample->add_option("--g", sa.g, "genus")->required();
  sample->add_option("--seed", sa.seed, "rng seed");
  sample->add_option("--x-max", sa.x_max, "enumeration cap in units of L");
  sample->add_option("--cap", sa.cap, "explicit cycle length cap (overrides --x-max)");
  sample->add_option("--max-cycles", sa.max_cycles, "stop after this many cycles");
  sample->add_option("--mode", sa.mode, "sampling arithmetic")
      ->check(CLI::IsMember({"auto", "exact", "log"}));
  sample->add_option("--diameter", sa.diameter, "also estimate the diameter")
      ->check(CLI::IsMember({"auto", "exact", "sweep"}));
  sample->add_flag("--terse", sa.terse, "omit bulky arrays (word, edge lists)");
  sample->add_option("--output", sa.output, "write to file instead of stdout");

  RunArgs ra;
  CLI::App* run = app.add_subcommand("run", "run a sampling experiment");
  run->add_option("--n", ra.cfg.n, "tree edge count")->required();
  run->add_option("--g", ra.cfg.g, "genus")->required();
  run->add_option("--samples", ra.cfg.samples, "number of independent instances");
  run->add_option("--x-max", ra.cfg.x_max, "enumeration cap in units of L");
  run->add_option("--window", ra.windows, "rescaled window [lo hi); repeatable")
      ->expected(-1)->type_size(2);
  run->add_option("--seed", ra.cfg.master_seed, "master seed");
  run->add_option("--workers", ra.workers, "worker threads (0: hardware threads)");
  run->add_flag("--include-loops", ra.cfg.include_loops, "count loops in windows");
  run->add_option("--mode", ra.mode, "sampling arithmetic")
      ->check(CLI::IsMember({"auto", "exact", "log"}));
  run->add_option("--max-cycles", ra.cfg.max_cycles, "per-sample enumeration limit");
  run->add_option("--output", ra.cfg.output_path, "per-sample output file");
  run->add_option("--format", ra.format, "output file format")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--flush-every", ra.cfg.flush_every, "partial rewrite interval");
  run->add_flag("--quiet", ra.quiet, "suppress the stdout summary");

  TheoryArgs ta;
  CLI::App* theory = app.add_subcommand("theory", "evaluate limit-law quantities");
  theory->add_option("--lambda", ta.lambda, "intensity over [x, y)")->expected(2);
  theory->add_option("--lambda-k", ta.lambda_k, "k-part intensity: x y k")->expected(3);
  theory->add_option("--window-term", ta.window_term, "discrete window term: k m M")
      ->expected(3);
  theory->add_option("--window-row", ta.window_row, "window terms 0..m_max: k M m_max")
      ->expected(3);
  theory->add_option("--systole", ta.systole, "limit P(systole <= z)");
  theory->add_option("--systole-grid", ta.systole_grid, "CDF grid: z_max steps")->expected(2);
  theory->add_option("--pk", ta.pk, "P(shortest cycle has k paths)")
      ->check(CLI::PositiveNumber);
  theory->add_option("--pk-all", ta.pk_all, "all of p_1..p_k")->check(CLI::PositiveNumber);

  std::string suite;
  CLI::App* validate_cmd = app.add_subcommand("validate", "run a validation suite");
  validate_cmd->add_option("suite", suite, "counters|samplers|kernel|lemmas|all")
      ->required()
      ->check(CLI::IsMember({"counters", "samplers", "kernel", "lemmas", "all"}));

  OracleArgs oa;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive small-case dumps");
  oracle->add_option("what", oa.what, "trees|cperms|map-stats|path-pairs|union-shapes|walks")
      ->required()
      ->check(CLI::IsMember(
          {"trees", "cperms", "map-stats", "path-pairs", "union-shapes", "walks"}));
  oracle->add_option("--n", oa.n, "size");
  oracle->add_option("--g", oa.g, "genus");
  oracle->add_option("--l1", oa.l1, "first path length");
  oracle->add_option("--l2", oa.l2, "second path length");
  oracle->add_option("--cap", oa.cap, "length cap");
  oracle->add_option("--seed", oa.seed, "rng seed");

  try {
    app.parse(argc, argv);
    if (*sample) return cmd_sample(sa);
    if (*run) return cmd_run(ra);
    if (*theory) return cmd_theory(ta);
    if (*validate_cmd) return cmd_validate(suite);
    if (*oracle) return cmd_oracle(oa);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
