#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unicycle/exact.hpp"
#include "unicycle/rng.hpp"

namespace unicycle {

// Permutations of {1..n} whose cycles all have odd length, counted with
// n - 2g cycles in total. Writing s for the number of cycles of length
// >= 3 and 2k_i + 1 for their lengths, sum k_i = g, so the census by the
// multiset {k_i} collapses to
//
//   h(n, g) = sum_{s=1..g} (n)_{2g+s} * W(g, s)        (g >= 1)
//   W(g, s) = [u^g] A(u)^s / s!,  A(u) = sum_{k>=1} u^k / (2k+1)
//
// with h(n, 0) = 1. W(g, s) is the weight 1/prod_k(m_k! (2k+1)^{m_k})
// summed over partitions of g into s parts. Everything in this module is
// driven by the coefficient table [u^h] A(u)^s, h, s <= g.

struct CPermutation {
  uint32_t n = 0;
  std::vector<std::vector<uint32_t>> cycles;  // disjoint, cover {1..n}, all odd
};

// Only the cycles of length >= 3; fixed points are implicit.
struct SparseCycles {
  uint32_t n = 0;
  std::vector<std::vector<uint32_t>> cycles;
};

CPermutation with_fixed_points(const SparseCycles& sparse);

// Rotates each cycle to start at its smallest element and orders cycles
// by that element.
void canonicalize(CPermutation& perm);

// Canonical text form "(1 4 7)(2)(3 5 6)...", usable as a hash key.
std::string cycle_key(const CPermutation& perm);

enum class SampleMode {
  automatic,   // exact for n <= 2000, log-domain above
  exact,       // exact integer weights, exactly uniform draws
  log_domain,  // double-precision log weights, per-draw error ~1e-12
};

// Coefficient tables for one maximal genus. Exact tables cost O(g^3)
// rational operations to build; the log tables are cheap. Read-only after
// construction, safe to share across threads.
class CountTable {
 public:
  explicit CountTable(uint32_t g_max, bool with_exact = true);

  uint32_t g_max() const { return g_max_; }
  bool has_exact() const { return !coeff_.empty(); }

  // h(n, g): the number of odd-cycle permutations of {1..n} with n - 2g
  // cycles. Zero when n < 2g + 1. Requires g <= g_max.
  BigInt count_exact(uint64_t n, uint32_t g) const;

  // log h(n, g); -inf when the count is zero.
  double count_log(uint64_t n, uint32_t g) const;

  // [u^h] A(u)^s, exact and in log form.
  const BigRat& power_coeff(uint32_t s, uint32_t h) const;
  double power_coeff_log(uint32_t s, uint32_t h) const;

 private:
  uint32_t g_max_;
  std::vector<std::vector<BigRat>> coeff_;      // coeff_[s][h]; empty if !with_exact
  std::vector<std::vector<double>> coeff_log_;  // log coeff, -inf at zero entries
};

// Convenience single-shot counters; they build a throwaway table.
BigInt count_cperms_exact(uint64_t n, uint32_t g);
double count_cperms_log(uint64_t n, uint32_t g);

// Number of permutations of {1..n} with exactly type[nu] cycles of each
// length nu (n = sum nu * type[nu]): n! / prod(type[nu]! * nu^type[nu]).
// Rejects even cycle lengths.
BigInt count_by_cycle_type(const std::map<uint32_t, uint64_t>& type);

// Draws uniform odd-cycle permutations with fixed (n, g). A sampler
// precomputes the outer-cycle-count distribution once; draw() costs
// O(g^2) plus O(g) hashed accesses into {1..n}.
//
// Exact mode makes every choice by exact integer weights and unbiased
// integer draws, so the output is exactly uniform. Log mode evaluates the
// same weights in double precision log space.
class CPermSampler {
 public:
  CPermSampler(uint32_t n, uint32_t g, const CountTable& table, SampleMode mode);

  SparseCycles draw(Rng& rng) const;

  uint32_t n() const { return n_; }
  uint32_t genus() const { return g_; }
  bool exact() const { return exact_; }

 private:
  uint32_t n_, g_;
  const CountTable& table_;
  bool exact_;
  std::vector<BigInt> cum_weights_;   // cumulative scaled weights of s (exact mode)
  std::vector<double> s_probs_;       // normalized weights of s (log mode)
};

// One-shot uniform draw; builds a table sized to g.
CPermutation sample_cperm(uint32_t n, uint32_t g, Rng& rng,
                          SampleMode mode = SampleMode::automatic);

// E N_nu, the expected number of nu-cycles (nu odd) under the uniform
// distribution: (n)_nu / nu * h(n - nu, g - (nu-1)/2) / h(n, g).
BigRat expected_cycle_count_exact(uint64_t n, uint32_t g, uint32_t nu);
double expected_cycle_count(uint64_t n, uint32_t g, uint32_t nu);

// First-moment bound lambda_nu = (3g)^{(nu-1)/2} / (nu (n-3g)^{(nu-3)/2}),
// valid for odd nu >= 3 when 3g < n.
BigRat lambda_bound_exact(uint64_t n, uint32_t g, uint32_t nu);
double lambda_bound(uint64_t n, uint32_t g, uint32_t nu);

struct PairingEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  uint64_t hits = 0;
  uint64_t samples = 0;
};

// Monte Carlo estimate of the probability that the pairs (1,2), (3,4),
// ..., (2r-1, 2r) each share a cycle, with the r cycles distinct.
PairingEstimate pairing_probability(uint32_t n, uint32_t g, uint32_t r, uint64_t samples,
                                    Rng& rng, SampleMode mode = SampleMode::automatic);

}  // namespace unicycle
