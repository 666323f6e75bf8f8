#include "subcubes/bounds.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace subcubes {

namespace {

void check_nk(int n, int k, int cap) {
  if (n < 0 || n > cap)
    throw std::invalid_argument("n out of range [0, " + std::to_string(cap) +
                                "]");
  if (k < 0 || k > n) throw std::invalid_argument("k must satisfy 0 <= k <= n");
}

}  // namespace

const BigInt& binomial(int n, int k) {
  static std::vector<std::vector<BigInt>> table;
  static std::once_flag built;
  std::call_once(built, [] {
    // Pascal's triangle up to the bounds cap (plus slack for sums like
    // C(l+n-k, n-k) with l <= k <= n <= 64).
    const int rows = 2 * max_bounds_dim + 1;
    table.resize(rows);
    for (int i = 0; i < rows; ++i) {
      table[i].resize(i + 1);
      table[i][0] = 1;
      table[i][i] = 1;
      for (int j = 1; j < i; ++j)
        table[i][j] = table[i - 1][j - 1] + table[i - 1][j];
    }
  });
  static const BigInt zero = 0;
  if (k < 0 || n < 0 || k > n) return zero;
  if (n >= static_cast<int>(table.size()))
    throw std::invalid_argument("binomial: n exceeds table size");
  return table[n][k];
}

BigInt floor_rational(const BigRat& r) {
  return numerator(r) / denominator(r);
}

std::string rational_string(const BigRat& r) {
  std::ostringstream ss;
  ss << numerator(r);
  if (denominator(r) != 1) ss << "/" << denominator(r);
  return ss.str();
}

double rational_double(const BigRat& r) { return r.convert_to<double>(); }

BigInt ah_upper(int n, int k) {
  check_nk(n, k, max_bounds_dim);
  BigInt total = 0;
  for (int i = k; i <= n; ++i) total += binomial(n, i);
  return total;
}

BigRat meshulam_upper(int n, int k) {
  check_nk(n, k, max_bounds_dim);
  BigInt denom = 0;
  for (int i = 0; i <= k; ++i) denom += binomial(n, i);
  return BigRat((BigInt(1) << n) * binomial(n, k), denom);
}

BigRat meshulam_grid_upper(int m, int n, int k) {
  check_nk(n, k, max_bounds_dim);
  if (m < 2) throw std::invalid_argument("grid bound needs m >= 2");
  BigInt q = m - 1;
  BigInt num = 1;
  for (int i = 0; i < n; ++i) num *= m;
  BigInt qpow = 1;
  for (int i = 0; i < n - k; ++i) qpow *= q;
  num *= qpow * binomial(n, k);
  BigInt denom = 0;
  BigInt qj = qpow;  // q^(n-k)
  for (int j = n - k; j <= n; ++j) {
    denom += qj * binomial(n, j);
    qj *= q;
  }
  return BigRat(num, denom);
}

BigRat beta(int n, int k) {
  check_nk(n, k, max_bounds_dim);
  BigInt denom = 0;
  for (int i = 0; i <= k; ++i) denom += binomial(n, i);
  return BigRat(binomial(n, k), denom);
}

BigRat eta(int n, int k) { return BigRat(1) - beta(n, k); }

double random_lower_factor(double b) {
  if (b <= 0 || b > 1)
    throw std::invalid_argument("random_lower_factor: beta must be in (0, 1]");
  if (b == 1.0) return 1.0;  // 0^0 := 1
  return b * std::pow(1.0 - b, (1.0 - b) / b);
}

double random_lower(int n, int k) {
  check_nk(n, k, max_bounds_dim);
  return random_lower_factor(rational_double(beta(n, k))) * std::ldexp(1.0, n);
}

double entropy(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("entropy: gamma must lie in (0, 1)");
  return gamma * std::log2(1.0 / gamma) +
         (1.0 - gamma) * std::log2(1.0 / (1.0 - gamma));
}

double gamma0() {
  // H2 decreases from 1 to 0 on (1/2, 1); bisect for H2 = 1/2.
  double lo = 0.5 + 1e-15, hi = 1.0 - 1e-15;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    double r = entropy(mid) - 0.5;
    if (std::fabs(r) <= 1e-12) break;
    if (r > 0)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

double ratio_g(double b) {
  if (!(b > 0.0 && b < 1.0))
    throw std::domain_error("ratio_g: beta must lie in (0, 1)");
  return std::pow(1.0 - b, (1.0 - b) / b);
}

BoundsReport bounds_report(int n, int k) {
  check_nk(n, k, max_bounds_dim);
  BoundsReport r;
  r.n = n;
  r.k = k;
  r.ah = ah_upper(n, k);
  r.meshulam = meshulam_upper(n, k);
  r.meshulam_floor = floor_rational(r.meshulam);
  r.beta = beta(n, k);
  r.eta = eta(n, k);
  r.random_lower = random_lower(n, k);
  double b = rational_double(r.beta);
  r.t_opt = b == 1.0 ? 0.0 : std::pow(1.0 - b, 1.0 / b);
  if (b >= 1.0)
    r.ratio_g = 1.0;  // limit as beta -> 1
  else if (b <= 0.0)
    r.ratio_g = 1.0 / std::exp(1.0);  // limit as beta -> 0 (unreachable here)
  else
    r.ratio_g = ratio_g(b);
  r.equality_n_2k_plus_1 = (n == 2 * k + 1);
  bool n_plus_1_pow2 = n >= 1 && ((n + 1) & n) == 0;
  r.perfect_code_case = (k == 1 && n_plus_1_pow2) || (k == 3 && n == 23);
  return r;
}

}  // namespace subcubes
