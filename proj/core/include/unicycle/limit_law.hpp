#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unicycle/exact.hpp"

namespace unicycle {

// Rescaling for cycle lengths: a size-n genus-g map has shortest cycles
// of typical order L = sqrt(n/(12 g)).
struct ScalingParams {
  uint64_t n = 0;
  uint32_t g = 0;
  double L = 0.0;

  ScalingParams(uint64_t n_, uint32_t g_);
  // True when n > 12 g, i.e. L > 1 and the rescaling makes sense.
  bool asymptotic_regime() const { return static_cast<double>(n) > 12.0 * g; }
};

// Intensity of the limit point process over [x, y): the series
// sum_{k>=1} (y^{2k} - x^{2k}) / ((2k) (2k)!), truncated once the tail
// bound drops below tol. Equals the integral of (cosh t - 1)/t.
double intensity(double x, double y, double tol = 1e-12);

// The k-th term of that series: the limit intensity of cycles made of
// exactly k tree paths with rescaled length in [x, y).
double intensity_k(double x, double y, uint32_t k);

// Discrete window intensity: with windows of width L/M, the limit
// expected count of k-path cycles in window m is
//   Lambda_k(m; M) = S(m, k) / ((2k) (2 M^2)^k)
// where S(m, k) sums prod_i (2 m_i + 1) over compositions of m into k
// non-negative parts. Exact rational value and double shortcut.
BigRat lambda_k_m_exact(uint64_t m, uint32_t k, uint64_t M);
double lambda_k_m(uint64_t m, uint32_t k, uint64_t M);

// All of Lambda_k(0..m_max; M) in one convolution pass.
std::vector<BigRat> lambda_k_row_exact(uint32_t k, uint64_t M, uint64_t m_max);

// Limit distribution function of the rescaled systole:
// P(Z <= z) = 1 - exp(-intensity(0, z)).
double systole_cdf(double z);

// Limit probability that the shortest cycle consists of exactly k tree
// paths: integral of z^{2k-1}/(2k)! * exp(-intensity(0,z)) over z >= 0.
// Values start near 0.792, 0.177, 0.028.
double shortest_cycle_k_prob(uint32_t k, double tol = 1e-9);

// Goodness of fit of per-sample counts against Poisson(lambda).
struct GofReport {
  size_t samples = 0;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double dispersion = 0.0;          // variance / mean
  double factorial_moment2 = 0.0;   // E[X(X-1)], lambda^2 for Poisson
  double factorial_moment2_stderr = 0.0;
  double chi_square = 0.0;
  uint32_t df = 0;
  double p_value = 1.0;
  bool degenerate = false;  // all-zero counts against lambda == 0
};

// Requires at least 100 samples. Chi-square bins are counts
// {0, 1, 2, ...} merged from the right until every expected bin mass is
// at least 5.
GofReport poisson_gof(std::span<const uint32_t> counts, double lambda);

struct ChiSquare {
  double stat = 0.0;
  uint32_t df = 0;
  double p_value = 1.0;
};

// Pearson chi-square of observed category counts against expected
// probabilities. Adjacent categories are pooled until each pooled bin
// has expected count >= min_expected; the trailing remainder joins the
// last bin. Needs at least two pooled bins, otherwise df = 0, p = 1.
ChiSquare chi_square_gof(std::span<const uint64_t> observed,
                         std::span<const double> expected_probs,
                         double min_expected = 5.0);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_pvalue(double stat, uint32_t df);

struct CovarianceReport {
  double covariance = 0.0;
  double std_error = 0.0;
};

// Sample covariance of paired counts with a plug-in standard error
// (standard deviation of centered products over sqrt(samples)).
CovarianceReport empirical_covariance(std::span<const uint32_t> a,
                                      std::span<const uint32_t> b);

}  // namespace unicycle
