#include "unicycle/cperm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace unicycle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Uniform integer in [0, bound), built from 64-bit words with rejection.
BigInt uniform_bigint_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_bigint_below: bound must be positive");
  if (bound <= std::numeric_limits<uint64_t>::max())
    return BigInt(rng.below(bound.convert_to<uint64_t>()));
  uint64_t bits = boost::multiprecision::msb(bound) + 1;
  uint64_t words = (bits + 63) / 64;
  for (;;) {
    BigInt r = 0;
    for (uint64_t w = 0; w < words; ++w) r = (r << 64) | rng.next_u64();
    r >>= words * 64 - bits;
    if (r < bound) return r;
  }
}

// Index drawn with probability weights[i] / sum(weights). Exact: weights
// are brought to a common denominator and an unbiased integer is drawn.
size_t draw_discrete_exact(const std::vector<BigRat>& weights, Rng& rng) {
  BigInt den = 1;
  for (const BigRat& w : weights) {
    BigInt d = denominator(w);
    den = den / gcd(den, d) * d;
  }
  std::vector<BigInt> cum(weights.size());
  BigInt total = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    total += numerator(weights[i]) * (den / denominator(weights[i]));
    cum[i] = total;
  }
  if (total <= 0) throw std::logic_error("draw_discrete_exact: empty distribution");
  BigInt x = uniform_bigint_below(total, rng);
  return static_cast<size_t>(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
}

size_t draw_discrete_log(const std::vector<double>& logw, Rng& rng) {
  double norm = log_sum_exp(logw);
  if (!std::isfinite(norm)) throw std::logic_error("draw_discrete_log: empty distribution");
  double u = rng.unit();
  double acc = 0.0;
  size_t last_positive = logw.size();
  for (size_t i = 0; i < logw.size(); ++i) {
    double p = std::exp(logw[i] - norm);
    if (p > 0) last_positive = i;
    acc += p;
    if (u < acc) return i;
  }
  if (last_positive == logw.size())
    throw std::logic_error("draw_discrete_log: no positive mass");
  return last_positive;  // u landed in rounding slack at the top
}

// Ordered uniform sample of `count` distinct elements of {1..n}: a
// partial Fisher-Yates walk over a virtual array, touched slots kept in a
// hash map.
std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t count, Rng& rng) {
  std::unordered_map<uint32_t, uint32_t> slot;
  slot.reserve(2 * count);
  std::vector<uint32_t> out(count);
  auto get = [&](uint32_t i) {
    auto it = slot.find(i);
    return it == slot.end() ? i : it->second;
  };
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t j = static_cast<uint32_t>(rng.between(i, n - 1));
    out[i] = get(j) + 1;
    slot[j] = get(i);
  }
  return out;
}

}  // namespace

CountTable::CountTable(uint32_t g_max, bool with_exact) : g_max_(g_max) {
  // log tables from long double rows of [u^h] A^s, rescaled per power
  std::vector<long double> row(g_max + 1, 0.0L), next(g_max + 1, 0.0L);
  std::vector<long double> a(g_max + 1, 0.0L);
  for (uint32_t k = 1; k <= g_max; ++k) a[k] = 1.0L / (2.0L * k + 1.0L);
  row[0] = 1.0L;
  double scale = 0.0;
  coeff_log_.assign(g_max + 1, std::vector<double>(g_max + 1, kNegInf));
  coeff_log_[0][0] = 0.0;
  for (uint32_t s = 1; s <= g_max; ++s) {
    long double row_max = 0.0L;
    for (uint32_t h = 0; h <= g_max; ++h) {
      long double acc = 0.0L;
      for (uint32_t k = 1; k + s - 1 <= h; ++k) acc += a[k] * row[h - k];
      next[h] = acc;
      if (acc > row_max) row_max = acc;
    }
    if (row_max > 0.0L && (row_max < 1e-1000L || row_max > 1e1000L)) {
      for (uint32_t h = 0; h <= g_max; ++h) next[h] /= row_max;
      scale += static_cast<double>(logl(row_max));
    }
    for (uint32_t h = 0; h <= g_max; ++h)
      if (next[h] > 0.0L)
        coeff_log_[s][h] = static_cast<double>(logl(next[h])) + scale;
    row.swap(next);
  }

  if (with_exact) {
    coeff_.assign(g_max + 1, std::vector<BigRat>(g_max + 1, BigRat(0)));
    coeff_[0][0] = 1;
    for (uint32_t s = 1; s <= g_max; ++s)
      for (uint32_t h = s; h <= g_max; ++h) {
        BigRat acc = 0;
        for (uint32_t k = 1; k + s - 1 <= h; ++k)
          acc += coeff_[s - 1][h - k] / BigRat(2 * k + 1);
        coeff_[s][h] = acc;
      }
  }
}

const BigRat& CountTable::power_coeff(uint32_t s, uint32_t h) const {
  if (!has_exact()) throw std::logic_error("CountTable: exact tables were not built");
  if (s > g_max_ || h > g_max_) throw std::out_of_range("CountTable::power_coeff");
  return coeff_[s][h];
}

double CountTable::power_coeff_log(uint32_t s, uint32_t h) const {
  if (s > g_max_ || h > g_max_) throw std::out_of_range("CountTable::power_coeff_log");
  return coeff_log_[s][h];
}

BigInt CountTable::count_exact(uint64_t n, uint32_t g) const {
  if (g > g_max_) throw std::out_of_range("CountTable::count_exact: g exceeds table");
  if (g == 0) return 1;
  if (!has_exact()) throw std::logic_error("CountTable: exact tables were not built");
  BigRat acc = 0;
  BigInt sfact = 1;
  for (uint32_t s = 1; s <= g; ++s) {
    sfact *= s;
    acc += BigRat(falling_factorial(n, 2 * g + s)) * coeff_[s][g] / BigRat(sfact);
  }
  if (denominator(acc) != 1)
    throw std::logic_error("CountTable::count_exact: non-integer census");
  return numerator(acc);
}

double CountTable::count_log(uint64_t n, uint32_t g) const {
  if (g > g_max_) throw std::out_of_range("CountTable::count_log: g exceeds table");
  if (g == 0) return 0.0;
  std::vector<double> terms(g);
  for (uint32_t s = 1; s <= g; ++s)
    terms[s - 1] =
        log_falling_factorial(n, 2 * g + s) + coeff_log_[s][g] - std::lgamma(s + 1.0);
  return log_sum_exp(terms);
}

BigInt count_cperms_exact(uint64_t n, uint32_t g) {
  return CountTable(g, true).count_exact(n, g);
}

namespace {

// log [u^g] B(u)^m for B(u) = sum_{j>=0} u^j / (2j+1), by the power
// recurrence n q_n = sum_{k=1..n} ((m+1)k - n) b_k q_{n-k}. Every term
// is positive as long as m + 1 > g, so the whole run stays in log
// space. O(g^2) time, O(g) memory, works for any m.
double log_power_coeff_direct(uint64_t m, uint32_t g) {
  std::vector<double> logb(g + 1), logq(g + 1);
  for (uint32_t j = 0; j <= g; ++j) logb[j] = -std::log(2.0 * j + 1.0);
  logq[0] = 0.0;
  std::vector<double> terms;
  for (uint32_t i = 1; i <= g; ++i) {
    terms.clear();
    for (uint32_t k = 1; k <= i; ++k) {
      double coef = static_cast<double>(m + 1) * k - static_cast<double>(i);
      terms.push_back(std::log(coef) + logb[k] + logq[i - k]);
    }
    logq[i] = log_sum_exp(terms) - std::log(static_cast<double>(i));
  }
  return logq[g];
}

}  // namespace

double count_cperms_log(uint64_t n, uint32_t g) {
  if (g == 0) return 0.0;
  if (n < 2ull * g + 1) return -std::numeric_limits<double>::infinity();
  uint64_t m = n - 2ull * g;
  // h(n, g) = n!/m! [u^g] B(u)^m. Fall back to the table route in the
  // dense-genus corner where the recurrence terms change sign.
  if (m + 1 > g)
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(m) + 1.0) + log_power_coeff_direct(m, g);
  return CountTable(g, false).count_log(n, g);
}

BigInt count_by_cycle_type(const std::map<uint32_t, uint64_t>& type) {
  uint64_t n = 0;
  for (auto [nu, count] : type) {
    if (nu == 0 || nu % 2 == 0)
      throw std::invalid_argument("count_by_cycle_type: cycle lengths must be odd");
    n += static_cast<uint64_t>(nu) * count;
  }
  BigInt den = 1;
  for (auto [nu, count] : type)
    den *= factorial(count) * boost::multiprecision::pow(BigInt(nu), static_cast<unsigned>(count));
  return factorial(n) / den;
}

CPermutation with_fixed_points(const SparseCycles& sparse) {
  CPermutation perm;
  perm.n = sparse.n;
  std::vector<bool> seen(sparse.n + 1, false);
  for (const auto& c : sparse.cycles) {
    perm.cycles.push_back(c);
    for (uint32_t e : c) seen[e] = true;
  }
  for (uint32_t e = 1; e <= sparse.n; ++e)
    if (!seen[e]) perm.cycles.push_back({e});
  canonicalize(perm);
  return perm;
}

void canonicalize(CPermutation& perm) {
  for (auto& c : perm.cycles) {
    auto min_it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), min_it, c.end());
  }
  std::sort(perm.cycles.begin(), perm.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::string cycle_key(const CPermutation& perm) {
  std::ostringstream out;
  for (const auto& c : perm.cycles) {
    out << '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) out << ' ';
      out << c[i];
    }
    out << ')';
  }
  return out.str();
}

CPermSampler::CPermSampler(uint32_t n, uint32_t g, const CountTable& table, SampleMode mode)
    : n_(n), g_(g), table_(table) {
  if (n == 0) throw std::invalid_argument("CPermSampler: n must be >= 1");
  if (g > table.g_max()) throw std::invalid_argument("CPermSampler: g exceeds table");
  if (g > 0 && n < 2 * g + 1)
    throw std::invalid_argument("CPermSampler: no odd-cycle permutation has this (n, g)");

  exact_ = mode == SampleMode::exact || (mode == SampleMode::automatic && n <= 2000);
  if (exact_ && !table.has_exact())
    throw std::invalid_argument("CPermSampler: exact mode needs exact tables");

  if (g == 0) return;
  if (exact_) {
    std::vector<BigRat> weights(g);
    BigInt sfact = 1;
    for (uint32_t s = 1; s <= g; ++s) {
      sfact *= s;
      weights[s - 1] =
          BigRat(falling_factorial(n, 2 * g + s)) * table.power_coeff(s, g) / BigRat(sfact);
    }
    BigInt den = 1;
    for (const BigRat& w : weights) {
      BigInt d = denominator(w);
      den = den / gcd(den, d) * d;
    }
    cum_weights_.resize(g);
    BigInt total = 0;
    for (uint32_t s = 1; s <= g; ++s) {
      total += numerator(weights[s - 1]) * (den / denominator(weights[s - 1]));
      cum_weights_[s - 1] = total;
    }
  } else {
    std::vector<double> logw(g);
    for (uint32_t s = 1; s <= g; ++s)
      logw[s - 1] = log_falling_factorial(n, 2 * g + s) + table.power_coeff_log(s, g) -
                    std::lgamma(s + 1.0);
    double norm = log_sum_exp(logw);
    s_probs_.resize(g);
    for (uint32_t s = 1; s <= g; ++s) s_probs_[s - 1] = std::exp(logw[s - 1] - norm);
  }
}

SparseCycles CPermSampler::draw(Rng& rng) const {
  SparseCycles out;
  out.n = n_;
  if (g_ == 0) return out;

  // number of cycles of length >= 3
  uint32_t s;
  if (exact_) {
    BigInt x = uniform_bigint_below(cum_weights_.back(), rng);
    s = 1 + static_cast<uint32_t>(
                std::upper_bound(cum_weights_.begin(), cum_weights_.end(), x) -
                cum_weights_.begin());
  } else {
    double u = rng.unit();
    double acc = 0.0;
    s = 0;
    for (uint32_t i = 1; i <= g_; ++i) {
      acc += s_probs_[i - 1];
      if (s_probs_[i - 1] > 0) s = i;
      if (u < acc) {
        s = i;
        break;
      }
    }
  }

  // cycle half-lengths k_1..k_s, sum g: sequential draws with the
  // one-fewer-part coefficients as continuation weights
  std::vector<uint32_t> parts(s);
  uint32_t h = g_;
  for (uint32_t j = 0; j < s; ++j) {
    uint32_t rem = s - j;           // parts still to draw, including this one
    uint32_t top = h - (rem - 1);   // leave at least 1 for each later part
    uint32_t k;
    if (rem == 1) {
      k = h;
    } else if (exact_) {
      std::vector<BigRat> w(top);
      for (uint32_t kk = 1; kk <= top; ++kk)
        w[kk - 1] = table_.power_coeff(rem - 1, h - kk) / BigRat(2 * kk + 1);
      k = 1 + static_cast<uint32_t>(draw_discrete_exact(w, rng));
    } else {
      std::vector<double> w(top);
      for (uint32_t kk = 1; kk <= top; ++kk)
        w[kk - 1] = table_.power_coeff_log(rem - 1, h - kk) - std::log(2.0 * kk + 1.0);
      k = 1 + static_cast<uint32_t>(draw_discrete_log(w, rng));
    }
    parts[j] = k;
    h -= k;
  }

  // uniformly ordered support, cut into consecutive cycles
  uint32_t support = 2 * g_ + s;
  std::vector<uint32_t> elems = sample_distinct(n_, support, rng);
  size_t off = 0;
  out.cycles.reserve(s);
  for (uint32_t j = 0; j < s; ++j) {
    uint32_t len = 2 * parts[j] + 1;
    out.cycles.emplace_back(elems.begin() + off, elems.begin() + off + len);
    off += len;
  }
  return out;
}

CPermutation sample_cperm(uint32_t n, uint32_t g, Rng& rng, SampleMode mode) {
  bool exact = mode == SampleMode::exact || (mode == SampleMode::automatic && n <= 2000);
  CountTable table(g, exact);
  CPermSampler sampler(n, g, table, exact ? SampleMode::exact : SampleMode::log_domain);
  return with_fixed_points(sampler.draw(rng));
}

BigRat expected_cycle_count_exact(uint64_t n, uint32_t g, uint32_t nu) {
  if (nu == 0 || nu % 2 == 0)
    throw std::invalid_argument("expected_cycle_count: nu must be odd");
  uint32_t e = (nu - 1) / 2;
  if (e > g || nu > n) return 0;
  CountTable table(g, true);
  BigInt hn = table.count_exact(n, g);
  if (hn == 0) throw std::invalid_argument("expected_cycle_count: infeasible (n, g)");
  return BigRat(falling_factorial(n, nu)) / BigRat(nu) *
         BigRat(table.count_exact(n - nu, g - e)) / BigRat(hn);
}

double expected_cycle_count(uint64_t n, uint32_t g, uint32_t nu) {
  if (nu == 0 || nu % 2 == 0)
    throw std::invalid_argument("expected_cycle_count: nu must be odd");
  uint32_t e = (nu - 1) / 2;
  if (e > g || nu > n) return 0.0;
  double log_hn = count_cperms_log(n, g);
  if (!std::isfinite(log_hn))
    throw std::invalid_argument("expected_cycle_count: infeasible (n, g)");
  double log_hsub = count_cperms_log(n - nu, g - e);
  if (!std::isfinite(log_hsub)) return 0.0;
  return std::exp(log_falling_factorial(n, nu) - std::log(static_cast<double>(nu)) +
                  log_hsub - log_hn);
}

BigRat lambda_bound_exact(uint64_t n, uint32_t g, uint32_t nu) {
  if (nu < 3 || nu % 2 == 0)
    throw std::invalid_argument("lambda_bound: nu must be odd and >= 3");
  if (g == 0 || 3ULL * g >= n)
    throw std::invalid_argument("lambda_bound: requires 1 <= g and 3g < n");
  uint32_t e = (nu - 1) / 2;
  BigInt num = boost::multiprecision::pow(BigInt(3) * g, e);
  BigInt den = BigInt(nu) * boost::multiprecision::pow(BigInt(n) - 3 * g, e - 1);
  return BigRat(num) / BigRat(den);
}

double lambda_bound(uint64_t n, uint32_t g, uint32_t nu) {
  return lambda_bound_exact(n, g, nu).convert_to<double>();
}

PairingEstimate pairing_probability(uint32_t n, uint32_t g, uint32_t r, uint64_t samples,
                                    Rng& rng, SampleMode mode) {
  if (r == 0 || 2 * r > n)
    throw std::invalid_argument("pairing_probability: need 1 <= r and 2r <= n");
  if (samples == 0) throw std::invalid_argument("pairing_probability: need samples >= 1");
  bool exact = mode == SampleMode::exact || (mode == SampleMode::automatic && n <= 2000);
  CountTable table(g, exact);
  CPermSampler sampler(n, g, table, exact ? SampleMode::exact : SampleMode::log_domain);

  uint64_t hits = 0;
  std::vector<uint32_t> cycle_of(2 * r + 1);
  for (uint64_t it = 0; it < samples; ++it) {
    SparseCycles sp = sampler.draw(rng);
    std::fill(cycle_of.begin(), cycle_of.end(), 0);
    for (size_t c = 0; c < sp.cycles.size(); ++c)
      for (uint32_t e : sp.cycles[c])
        if (e <= 2 * r) cycle_of[e] = static_cast<uint32_t>(c + 1);
    bool ok = true;
    for (uint32_t i = 1; ok && i <= r; ++i) {
      uint32_t a = cycle_of[2 * i - 1], b = cycle_of[2 * i];
      ok = a != 0 && a == b;
      // distinctness: pair i and any earlier pair must use different cycles
      for (uint32_t j = 1; ok && j < i; ++j) ok = cycle_of[2 * j] != a;
    }
    if (ok) ++hits;
  }
  PairingEstimate est;
  est.hits = hits;
  est.samples = samples;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

}  // namespace unicycle
