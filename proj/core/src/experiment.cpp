#include "unicycle/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "unicycle/rng.hpp"

namespace unicycle {

namespace {

using nlohmann::json;

constexpr uint32_t kJunctionReportMax = 6;
constexpr uint32_t kShortestKReportMax = 4;

const char* mode_name(SampleMode m) {
  switch (m) {
    case SampleMode::exact:
      return "exact";
    case SampleMode::log_domain:
      return "log";
    default:
      return "automatic";
  }
}

// Worker count and flush interval are execution details, not part of the
// experiment identity; leaving them out keeps output files byte-identical
// across worker counts.
json config_to_json(const ExperimentConfig& cfg) {
  json w = json::array();
  for (const Window& win : cfg.windows) w.push_back({win.lo, win.hi});
  return json{{"n", cfg.n},
              {"g", cfg.g},
              {"samples", cfg.samples},
              {"x_max", cfg.x_max},
              {"windows", std::move(w)},
              {"master_seed", cfg.master_seed},
              {"include_loops", cfg.include_loops},
              {"mode", mode_name(cfg.mode)},
              {"max_cycles", cfg.max_cycles},
              {"format", cfg.format == OutputFormat::json ? "json" : "csv"}};
}

json row_to_json(const SampleRow& row) {
  json cycles = json::array();
  for (const CycleRecord& c : row.cycles) cycles.push_back({c.length, c.junctions, c.loop});
  json r{{"id", row.id},
         {"seed", row.seed},
         {"truncated", row.truncated},
         {"windows", row.window_counts},
         {"cycles", std::move(cycles)}};
  if (row.systole > 0) {
    r["systole"] = row.systole;
    r["shortest_k"] = row.shortest_k;
  } else {
    r["systole"] = nullptr;
    r["shortest_k"] = nullptr;
  }
  return r;
}

json gof_to_json(const GofReport& g) {
  return json{{"samples", g.samples},
              {"mean", g.mean},
              {"mean_stderr", g.mean_stderr},
              {"variance", g.variance},
              {"dispersion", g.dispersion},
              {"factorial_moment2", g.factorial_moment2},
              {"factorial_moment2_stderr", g.factorial_moment2_stderr},
              {"chi_square", g.chi_square},
              {"df", g.df},
              {"p_value", g.p_value},
              {"degenerate", g.degenerate}};
}

std::string render_json(const ExperimentSummary& sum, size_t prefix, bool final_output) {
  json j;
  j["config"] = config_to_json(sum.config);
  j["L"] = sum.L;
  j["cap"] = sum.cap;
  j["partial"] = !final_output;
  json rows = json::array();
  for (size_t i = 0; i < prefix; ++i) rows.push_back(row_to_json(sum.rows[i]));
  j["samples"] = std::move(rows);
  if (final_output) {
    j["truncated_samples"] = sum.truncated_samples;
    j["samples_with_cycle"] = sum.samples_with_cycle;
    json windows = json::array();
    for (const WindowReport& wr : sum.window_reports) {
      windows.push_back(json{{"lo", wr.window.lo},
                             {"hi", wr.window.hi},
                             {"lambda", wr.lambda},
                             {"gof", gof_to_json(wr.gof)},
                             {"lambda_k", wr.lambda_k},
                             {"mean_k", wr.mean_k},
                             {"mean_k_stderr", wr.mean_k_stderr}});
    }
    json covs = json::array();
    for (const CrossWindowCovariance& c : sum.covariances)
      covs.push_back(json{{"first", c.first},
                          {"second", c.second},
                          {"covariance", c.report.covariance},
                          {"std_error", c.report.std_error}});
    json sys = json::array();
    for (const SystolePoint& p : sum.systole_points)
      sys.push_back(json{{"z", p.z}, {"empirical", p.empirical}, {"limit", p.limit}});
    json sk = json::array();
    for (const ShortestKPoint& p : sum.shortest_k_points)
      sk.push_back(json{{"k", p.k}, {"empirical", p.empirical}, {"limit", p.limit}});
    j["summary"] = json{{"windows", std::move(windows)},
                        {"covariances", std::move(covs)},
                        {"systole", std::move(sys)},
                        {"shortest_k", std::move(sk)}};
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const ExperimentSummary& sum, size_t prefix) {
  std::ostringstream os;
  os << "sample_id,seed,systole,shortest_k";
  for (size_t w = 0; w < sum.config.windows.size(); ++w) os << ",window_" << w;
  os << "\n";
  for (size_t i = 0; i < prefix; ++i) {
    const SampleRow& r = sum.rows[i];
    os << r.id << ',' << r.seed << ',';
    if (r.systole > 0)
      os << r.systole << ',' << r.shortest_k;
    else
      os << ',';
    for (uint32_t c : r.window_counts) os << ',' << c;
    os << "\n";
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + tmp);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move output into place: " + path);
}

void write_prefix(const ExperimentSummary& sum, size_t prefix, bool final_output) {
  const std::string& path = sum.config.output_path;
  if (path.empty()) return;
  std::string content = sum.config.format == OutputFormat::json
                            ? render_json(sum, prefix, final_output)
                            : render_csv(sum, prefix);
  write_file_atomic(path, content);
}

// Mean/variance fallback for aggregate reports when there are too few
// samples for the chi-square machinery.
GofReport plain_moments(std::span<const uint32_t> counts) {
  GofReport r;
  r.samples = counts.size();
  if (counts.empty()) return r;
  double n = static_cast<double>(counts.size());
  double sum = 0.0, sum_f2 = 0.0;
  for (uint32_t c : counts) {
    sum += c;
    sum_f2 += static_cast<double>(c) * (static_cast<double>(c) - 1.0);
  }
  r.mean = sum / n;
  r.factorial_moment2 = sum_f2 / n;
  if (counts.size() > 1) {
    double ss = 0.0;
    for (uint32_t c : counts) {
      double d = static_cast<double>(c) - r.mean;
      ss += d * d;
    }
    r.variance = ss / (n - 1.0);
    r.mean_stderr = std::sqrt(r.variance / n);
    r.dispersion = r.mean > 0.0 ? r.variance / r.mean : 0.0;
  }
  return r;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("experiment: need n >= 1");
  if (cfg.samples < 1) throw std::invalid_argument("experiment: need samples >= 1");
  if (!(cfg.x_max > 0.0)) throw std::invalid_argument("experiment: need x_max > 0");
  if (cfg.flush_every < 1) throw std::invalid_argument("experiment: need flush_every >= 1");
  if (cfg.max_cycles < 1) throw std::invalid_argument("experiment: need max_cycles >= 1");
  if (cfg.n < 2ull * cfg.g)
    throw std::invalid_argument("experiment: infeasible (n, g), need n >= 2g");
  std::vector<Window> sorted = cfg.windows;
  std::sort(sorted.begin(), sorted.end(),
            [](const Window& a, const Window& b) { return a.lo < b.lo; });
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].lo >= 0.0 && sorted[i].lo < sorted[i].hi))
      throw std::invalid_argument("experiment: window must satisfy 0 <= lo < hi");
    if (sorted[i].hi > cfg.x_max)
      throw std::invalid_argument("experiment: window exceeds x_max");
    if (i > 0 && sorted[i - 1].hi > sorted[i].lo)
      throw std::invalid_argument("experiment: windows overlap");
  }
}

PipelineResult run_pipeline(uint32_t n, uint64_t seed, const CPermSampler& sampler,
                            uint64_t cap, uint64_t max_cycles, bool prune) {
  if (sampler.n() != n + 1)
    throw std::invalid_argument("run_pipeline: sampler must act on n+1 elements");
  PipelineResult out;
  out.seed = seed;
  Rng rng(seed);
  out.tree = sample_plane_tree(n, rng);
  out.sigma = sampler.draw(rng);
  out.graph = build_underlying_graph(out.tree, out.sigma);
  out.kernel = kernelize(out.graph);
  EnumOptions opt;
  opt.cap = cap;
  opt.prune = prune;
  opt.max_cycles = max_cycles;
  out.enumeration = enumerate_short_cycles(out.kernel, opt);
  return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentSummary sum;
  sum.config = cfg;
  if (cfg.g > 0) {
    ScalingParams sp(cfg.n, cfg.g);
    sum.L = sp.L;
    sum.cap = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(cfg.x_max * sp.L)));
  }

  bool exact_mode = cfg.mode == SampleMode::exact ||
                    (cfg.mode == SampleMode::automatic && cfg.n + 1 <= 2000);
  CountTable table(cfg.g, exact_mode);
  CPermSampler sampler(cfg.n + 1, cfg.g, table, cfg.mode);

  sum.rows.assign(cfg.samples, SampleRow{});
  std::unique_ptr<std::atomic<uint8_t>[]> done(new std::atomic<uint8_t>[cfg.samples]);
  for (uint64_t i = 0; i < cfg.samples; ++i) done[i].store(0, std::memory_order_relaxed);

  uint32_t workers = cfg.workers != 0
                         ? cfg.workers
                         : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<uint64_t> next{0};
  std::atomic<uint32_t> workers_live{workers};
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](uint32_t w) {
    try {
      for (;;) {
        uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= cfg.samples) break;
        PipelineResult pr = run_pipeline(cfg.n, derive_seed(cfg.master_seed, i), sampler,
                                         sum.cap, cfg.max_cycles);
        SampleRow row;
        row.id = i;
        row.seed = pr.seed;
        row.truncated = pr.enumeration.truncated;
        row.window_counts.assign(cfg.windows.size(), 0);
        row.cycles = std::move(pr.enumeration.cycles);
        for (const CycleRecord& c : row.cycles) {
          if (c.loop && !cfg.include_loops) continue;
          if (row.systole == 0 || c.length < row.systole) {
            row.systole = c.length;
            row.shortest_k = c.junctions;
          } else if (c.length == row.systole) {
            row.shortest_k = std::min(row.shortest_k, c.junctions);
          }
          if (sum.L > 0.0) {
            double x = static_cast<double>(c.length) / sum.L;
            for (size_t wi = 0; wi < cfg.windows.size(); ++wi)
              if (x >= cfg.windows[wi].lo && x < cfg.windows[wi].hi)
                ++row.window_counts[wi];
          }
        }
        sum.rows[i] = std::move(row);
        done[i].store(1, std::memory_order_release);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
    workers_live.fetch_sub(1, std::memory_order_release);
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);

  uint64_t prefix = 0, last_flush = 0;
  for (;;) {
    while (prefix < cfg.samples && done[prefix].load(std::memory_order_acquire)) ++prefix;
    if (prefix >= cfg.samples) break;
    if (workers_live.load(std::memory_order_acquire) == 0) break;
    if (!cfg.output_path.empty() && prefix >= last_flush + cfg.flush_every) {
      write_prefix(sum, prefix, false);
      last_flush = prefix;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  for (std::thread& t : pool) t.join();
  for (std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  for (const SampleRow& row : sum.rows) {
    if (row.truncated) ++sum.truncated_samples;
    if (row.systole > 0) ++sum.samples_with_cycle;
  }

  size_t nw = cfg.windows.size();
  std::vector<std::vector<uint32_t>> cols(nw, std::vector<uint32_t>(cfg.samples));
  for (uint64_t i = 0; i < cfg.samples; ++i)
    for (size_t wi = 0; wi < nw; ++wi) cols[wi][i] = sum.rows[i].window_counts[wi];

  for (size_t wi = 0; wi < nw; ++wi) {
    const Window& win = cfg.windows[wi];
    WindowReport wr;
    wr.window = win;
    wr.lambda = intensity(win.lo, win.hi);
    wr.gof = cfg.samples >= 100 ? poisson_gof(cols[wi], wr.lambda) : plain_moments(cols[wi]);
    for (uint32_t k = 1; k <= kJunctionReportMax; ++k) {
      wr.lambda_k.push_back(intensity_k(win.lo, win.hi, k));
      std::vector<uint32_t> ck(cfg.samples, 0);
      for (uint64_t i = 0; i < cfg.samples; ++i) {
        uint32_t cnt = 0;
        for (const CycleRecord& c : sum.rows[i].cycles) {
          if (c.loop && !cfg.include_loops) continue;
          if (c.junctions != k || sum.L <= 0.0) continue;
          double x = static_cast<double>(c.length) / sum.L;
          if (x >= win.lo && x < win.hi) ++cnt;
        }
        ck[i] = cnt;
      }
      GofReport mom = plain_moments(ck);
      wr.mean_k.push_back(mom.mean);
      wr.mean_k_stderr.push_back(mom.mean_stderr);
    }
    sum.window_reports.push_back(std::move(wr));
  }

  if (cfg.samples >= 2)
    for (size_t a = 0; a < nw; ++a)
      for (size_t b = a + 1; b < nw; ++b)
        sum.covariances.push_back({a, b, empirical_covariance(cols[a], cols[b])});

  std::vector<double> zs;
  for (const Window& w : cfg.windows) {
    if (w.lo > 0.0) zs.push_back(w.lo);
    zs.push_back(w.hi);
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  for (double z : zs)
    sum.systole_points.push_back({z, empirical_systole_cdf(sum, z), systole_cdf(z)});

  for (uint32_t k = 1; k <= kShortestKReportMax; ++k) {
    uint64_t cnt = 0;
    for (const SampleRow& row : sum.rows)
      if (row.systole > 0 && row.shortest_k == k) ++cnt;
    double emp = sum.samples_with_cycle > 0
                     ? static_cast<double>(cnt) / static_cast<double>(sum.samples_with_cycle)
                     : 0.0;
    sum.shortest_k_points.push_back({k, emp, shortest_cycle_k_prob(k)});
  }

  if (!cfg.output_path.empty()) write_prefix(sum, sum.rows.size(), true);
  return sum;
}

double empirical_systole_cdf(const ExperimentSummary& summary, double z) {
  if (summary.rows.empty() || summary.L <= 0.0) return 0.0;
  uint64_t cnt = 0;
  for (const SampleRow& row : summary.rows)
    if (row.systole > 0 && static_cast<double>(row.systole) / summary.L <= z) ++cnt;
  return static_cast<double>(cnt) / static_cast<double>(summary.rows.size());
}

std::vector<double> shortest_k_distribution(const ExperimentSummary& summary, uint32_t k_max) {
  std::vector<double> out(k_max + 1, 0.0);
  if (summary.samples_with_cycle == 0) return out;
  for (const SampleRow& row : summary.rows) {
    if (row.systole == 0) continue;
    out[std::min(row.shortest_k, k_max)] += 1.0;
  }
  for (double& v : out) v /= static_cast<double>(summary.samples_with_cycle);
  return out;
}

void write_summary(const ExperimentSummary& summary, const std::string& path,
                   OutputFormat format) {
  std::string content = format == OutputFormat::json
                            ? render_json(summary, summary.rows.size(), true)
                            : render_csv(summary, summary.rows.size());
  write_file_atomic(path, content);
}

}  // namespace unicycle
