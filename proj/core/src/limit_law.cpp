#include "unicycle/limit_law.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>

namespace unicycle {

ScalingParams::ScalingParams(uint64_t n_, uint32_t g_) : n(n_), g(g_) {
  if (n == 0 || g == 0) throw std::invalid_argument("ScalingParams: need n >= 1, g >= 1");
  L = std::sqrt(static_cast<double>(n) / (12.0 * static_cast<double>(g)));
}

double intensity(double x, double y, double tol) {
  if (!(x >= 0.0) || !(y >= x)) throw std::invalid_argument("intensity: need 0 <= x <= y");
  if (!(tol > 0.0)) throw std::invalid_argument("intensity: need tol > 0");
  // tx, ty track x^{2k}/(2k)! incrementally so nothing overflows.
  double tx = 1.0, ty = 1.0;
  double sum = 0.0, comp = 0.0;
  for (uint32_t k = 1; k <= 100000; ++k) {
    double scale = 1.0 / (static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
    tx *= x * x * scale;
    ty *= y * y * scale;
    double term = (ty - tx) / static_cast<double>(2 * k);
    double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    // Once 2k(2k+1) > 2 y^2 the terms at least halve, so ty/(2k) bounds
    // the whole remaining tail.
    if (static_cast<double>(2 * k) * static_cast<double>(2 * k + 1) > 2.0 * y * y &&
        ty / static_cast<double>(2 * k) < tol * 0.5)
      break;
  }
  return sum + comp;
}

double intensity_k(double x, double y, uint32_t k) {
  if (!(x >= 0.0) || !(y >= x)) throw std::invalid_argument("intensity_k: need 0 <= x <= y");
  if (k == 0) throw std::invalid_argument("intensity_k: need k >= 1");
  double px = 1.0, py = 1.0;
  for (uint32_t j = 1; j <= 2 * k; ++j) {
    px *= x / static_cast<double>(j);
    py *= y / static_cast<double>(j);
  }
  return (py - px) / static_cast<double>(2 * k);
}

std::vector<BigRat> lambda_k_row_exact(uint32_t k, uint64_t M, uint64_t m_max) {
  if (k == 0 || M == 0) throw std::invalid_argument("lambda_k_row_exact: need k, M >= 1");
  // S(., k): k-fold convolution of the sequence 2m+1.
  std::vector<BigInt> row(m_max + 1);
  for (uint64_t m = 0; m <= m_max; ++m) row[m] = 2 * m + 1;
  std::vector<BigInt> next(m_max + 1);
  for (uint32_t p = 2; p <= k; ++p) {
    for (uint64_t m = 0; m <= m_max; ++m) {
      BigInt acc = 0;
      for (uint64_t j = 0; j <= m; ++j) acc += row[j] * (2 * (m - j) + 1);
      next[m] = std::move(acc);
    }
    row.swap(next);
  }
  BigInt denom = 2 * k;
  BigInt window = 2 * BigInt(M) * M;
  for (uint32_t p = 0; p < k; ++p) denom *= window;
  std::vector<BigRat> out(m_max + 1);
  for (uint64_t m = 0; m <= m_max; ++m) out[m] = BigRat(row[m], denom);
  return out;
}

BigRat lambda_k_m_exact(uint64_t m, uint32_t k, uint64_t M) {
  return lambda_k_row_exact(k, M, m).back();
}

double lambda_k_m(uint64_t m, uint32_t k, uint64_t M) {
  return lambda_k_m_exact(m, k, M).convert_to<double>();
}

double systole_cdf(double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("systole_cdf: need z >= 0");
  return -std::expm1(-intensity(0.0, z));
}

namespace {

double shortest_k_integrand(double z, uint32_t k) {
  // z^{2k-1}/(2k)! times the survival probability of the systole.
  double t = 1.0 / static_cast<double>(2 * k);
  for (uint32_t j = 1; j < 2 * k; ++j) t *= z / static_cast<double>(j);
  return t * std::exp(-intensity(0.0, z, 1e-14));
}

double adaptive_simpson(uint32_t k, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = shortest_k_integrand(lm, k);
  double frm = shortest_k_integrand(rm, k);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(k, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(k, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double shortest_cycle_k_prob(uint32_t k, double tol) {
  if (k == 0) throw std::invalid_argument("shortest_cycle_k_prob: need k >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("shortest_cycle_k_prob: need tol > 0");
  // Beyond z = 30 the survival factor is below 1e-30 and kills the
  // polynomial for every k of interest. Unit panels keep the adaptive
  // refinement from skipping the bump near z = 1 (a single Simpson pass
  // over [0, 30] sees zeros at 0, 15, 30 and stops immediately).
  double total = 0.0;
  for (uint32_t p = 0; p < 30; ++p) {
    double a = p, b = p + 1.0;
    double fa = shortest_k_integrand(a, k);
    double fb = shortest_k_integrand(b, k);
    double m = 0.5 * (a + b);
    double fm = shortest_k_integrand(m, k);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(k, a, b, fa, fm, fb, whole, tol / 30.0, 40);
  }
  return total;
}

double chi_square_pvalue(double stat, uint32_t df) {
  if (df == 0) return 1.0;
  if (!(stat >= 0.0)) stat = 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * stat);
}

ChiSquare chi_square_gof(std::span<const uint64_t> observed,
                         std::span<const double> expected_probs,
                         double min_expected) {
  if (observed.size() != expected_probs.size())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  uint64_t total = 0;
  for (uint64_t o : observed) total += o;
  if (total == 0) throw std::invalid_argument("chi_square_gof: no observations");

  std::vector<double> exp_bins;
  std::vector<uint64_t> obs_bins;
  double e_acc = 0.0;
  uint64_t o_acc = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    e_acc += expected_probs[i] * static_cast<double>(total);
    o_acc += observed[i];
    if (e_acc >= min_expected) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0) {
    if (exp_bins.empty()) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
    } else {
      exp_bins.back() += e_acc;
      obs_bins.back() += o_acc;
    }
  }

  ChiSquare cs;
  if (exp_bins.size() < 2) return cs;
  for (size_t i = 0; i < exp_bins.size(); ++i) {
    double d = static_cast<double>(obs_bins[i]) - exp_bins[i];
    cs.stat += d * d / exp_bins[i];
  }
  cs.df = static_cast<uint32_t>(exp_bins.size() - 1);
  cs.p_value = chi_square_pvalue(cs.stat, cs.df);
  return cs;
}

GofReport poisson_gof(std::span<const uint32_t> counts, double lambda) {
  if (counts.size() < 100) throw std::invalid_argument("poisson_gof: need >= 100 samples");
  if (!(lambda >= 0.0)) throw std::invalid_argument("poisson_gof: need lambda >= 0");
  GofReport r;
  r.samples = counts.size();
  double n = static_cast<double>(counts.size());

  double sum = 0.0, sum_f2 = 0.0;
  uint32_t max_count = 0;
  for (uint32_t c : counts) {
    sum += c;
    sum_f2 += static_cast<double>(c) * (static_cast<double>(c) - 1.0);
    max_count = std::max(max_count, c);
  }
  r.mean = sum / n;
  r.factorial_moment2 = sum_f2 / n;

  double ss = 0.0, ss_f2 = 0.0;
  for (uint32_t c : counts) {
    double d = static_cast<double>(c) - r.mean;
    ss += d * d;
    double f2 = static_cast<double>(c) * (static_cast<double>(c) - 1.0);
    ss_f2 += (f2 - r.factorial_moment2) * (f2 - r.factorial_moment2);
  }
  r.variance = ss / (n - 1.0);
  r.mean_stderr = std::sqrt(r.variance / n);
  r.factorial_moment2_stderr = std::sqrt(ss_f2 / (n - 1.0) / n);

  if (r.mean == 0.0 && lambda == 0.0) {
    r.degenerate = true;
    r.dispersion = 1.0;
    return r;
  }
  r.dispersion = r.mean > 0.0 ? r.variance / r.mean : 0.0;

  // Bin by count value 0..max, Poisson tail mass on the last category.
  std::vector<uint64_t> obs(max_count + 2, 0);
  for (uint32_t c : counts) ++obs[c];
  std::vector<double> probs(max_count + 2, 0.0);
  double p = std::exp(-lambda);
  double cum = 0.0;
  for (uint32_t c = 0; c <= max_count; ++c) {
    probs[c] = p;
    cum += p;
    p *= lambda / static_cast<double>(c + 1);
  }
  probs[max_count + 1] = std::max(0.0, 1.0 - cum);

  ChiSquare cs = chi_square_gof(obs, probs);
  r.chi_square = cs.stat;
  r.df = cs.df;
  r.p_value = cs.p_value;
  return r;
}

CovarianceReport empirical_covariance(std::span<const uint32_t> a,
                                      std::span<const uint32_t> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("empirical_covariance: need two equal series");
  double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    acc += (static_cast<double>(a[i]) - ma) * (static_cast<double>(b[i]) - mb);
  CovarianceReport rep;
  rep.covariance = acc / (n - 1.0);
  double ss = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double prod = (static_cast<double>(a[i]) - ma) * (static_cast<double>(b[i]) - mb);
    ss += (prod - rep.covariance) * (prod - rep.covariance);
  }
  rep.std_error = std::sqrt(ss / (n - 1.0) / n);
  return rep;
}

}  // namespace unicycle
