#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unicycle/cperm.hpp"
#include "unicycle/cycle_enum.hpp"
#include "unicycle/limit_law.hpp"
#include "unicycle/plane_tree.hpp"
#include "unicycle/underlying_graph.hpp"

namespace unicycle {

// Half-open interval [lo, hi) on the rescaled length axis.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

enum class OutputFormat { json, csv };

struct ExperimentConfig {
  uint32_t n = 0;
  uint32_t g = 0;
  uint64_t samples = 1;
  double x_max = 5.0;  // enumeration cap = ceil(x_max * L)
  std::vector<Window> windows;
  uint64_t master_seed = 1;
  uint32_t workers = 1;  // 0: one per hardware thread
  bool include_loops = false;
  SampleMode mode = SampleMode::automatic;
  uint64_t max_cycles = 1'000'000;
  std::string output_path;  // empty: keep everything in memory only
  OutputFormat format = OutputFormat::json;
  uint64_t flush_every = 1000;  // partial file rewrite interval
};

// Throws std::invalid_argument on infeasible or inconsistent settings.
void validate(const ExperimentConfig& cfg);

struct SampleRow {
  uint64_t id = 0;
  uint64_t seed = 0;
  uint64_t systole = 0;     // shortest cycle length; 0 when none within cap
  uint32_t shortest_k = 0;  // least junction count among shortest cycles
  std::vector<uint32_t> window_counts;
  std::vector<CycleRecord> cycles;  // all enumerated records, loops flagged
  bool truncated = false;
};

struct WindowReport {
  Window window;
  double lambda = 0.0;  // limit intensity over the window
  GofReport gof;        // empirical counts vs Poisson(lambda)
  std::vector<double> lambda_k;  // limit intensity split by junction count, k = 1..
  std::vector<double> mean_k;
  std::vector<double> mean_k_stderr;
};

struct CrossWindowCovariance {
  size_t first = 0, second = 0;
  CovarianceReport report;
};

struct SystolePoint {
  double z = 0.0;
  double empirical = 0.0;  // P(systole <= z L), unconditional
  double limit = 0.0;      // 1 - exp(-intensity(0, z))
};

struct ShortestKPoint {
  uint32_t k = 0;
  double empirical = 0.0;  // among samples that have a cycle within cap
  double limit = 0.0;
};

struct ExperimentSummary {
  ExperimentConfig config;
  double L = 0.0;
  uint64_t cap = 0;
  std::vector<SampleRow> rows;  // ordered by sample id
  std::vector<WindowReport> window_reports;
  std::vector<CrossWindowCovariance> covariances;
  std::vector<SystolePoint> systole_points;
  std::vector<ShortestKPoint> shortest_k_points;
  uint64_t truncated_samples = 0;
  uint64_t samples_with_cycle = 0;
};

// Samples cfg.samples independent instances (tree + permutation ->
// graph -> kernel -> short cycles), each from its own stream seeded by
// (master_seed, sample index), and aggregates window statistics against
// the limit law. Output files and the returned summary are identical
// for identical configs regardless of worker count. Partial output is
// rewritten every flush_every completed samples and is always valid
// JSON/CSV.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// Fraction of samples whose rescaled systole is <= z (samples with no
// cycle within the cap count as above any z).
double empirical_systole_cdf(const ExperimentSummary& summary, double z);

// Distribution of the shortest cycle's junction count over samples that
// have a cycle; index 0 unused, index k = fraction with shortest_k == k,
// k > k_max pooled into the last slot.
std::vector<double> shortest_k_distribution(const ExperimentSummary& summary, uint32_t k_max);

// One full pipeline pass; the unit that run_experiment repeats.
struct PipelineResult {
  uint64_t seed = 0;
  PlaneTree tree;
  SparseCycles sigma;
  UnderlyingGraph graph;
  Kernel kernel;
  EnumResult enumeration;
};

// sampler must act on n+1 elements. prune toggles search pruning (the
// result is identical either way; exposed for invariant tests).
PipelineResult run_pipeline(uint32_t n, uint64_t seed, const CPermSampler& sampler,
                            uint64_t cap, uint64_t max_cycles = 1'000'000,
                            bool prune = true);

// Serializes rows (and, for JSON, the aggregate reports) to path.
// Writes to a temporary file first, then renames.
void write_summary(const ExperimentSummary& summary, const std::string& path,
                   OutputFormat format);

}  // namespace unicycle
