#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "subcubes/cube.hpp"

// Exact bound formulas for the maximum size M(n,k) of an irredundant family
// of k-subcubes of {0,1}^n, plus the entropy / ratio analysis around them.
// Bound values are exact big rationals; only the entropy and the randomized
// lower bound are floating point.

namespace subcubes {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; 0 outside 0 <= k <= n.
const BigInt& binomial(int n, int k);

BigInt floor_rational(const BigRat& r);  // for non-negative r
std::string rational_string(const BigRat& r);
double rational_double(const BigRat& r);

/// Linear-independence upper bound: sum_{i=k}^{n} C(n,i).
BigInt ah_upper(int n, int k);

/// Combinatorial upper bound: 2^n * C(n,k) / sum_{i=0}^{k} C(n,i), exact.
BigRat meshulam_upper(int n, int k);

/// Grid generalization over Z_m^n:
/// m^n * (m-1)^(n-k) * C(n,k) / sum_{j=n-k}^{n} (m-1)^j C(n,j).
BigRat meshulam_grid_upper(int m, int n, int k);

/// beta = C(n,k) / sum_{i=0}^{k} C(n,i); eta = 1 - beta.
BigRat beta(int n, int k);
BigRat eta(int n, int k);

/// The scalar factor beta*(1-beta)^((1-beta)/beta) with 0^0 := 1.
double random_lower_factor(double beta_value);

/// Randomized lower bound factor times 2^n (k = 0 gives exactly 2^n).
double random_lower(int n, int k);

/// Binary entropy; gamma must lie in (0,1).
double entropy(double gamma);

/// The unique solution of H2(gamma) = 1/2 in (1/2, 1), by bisection to a
/// residual of 1e-12.
double gamma0();

/// Lower/upper bound ratio g(beta) = (1-beta)^((1-beta)/beta) on (0,1).
double ratio_g(double beta_value);

/// All bounds for one (n, k), with the equality-case flags.
struct BoundsReport {
  int n = 0;
  int k = 0;
  BigInt ah;
  BigRat meshulam;
  BigInt meshulam_floor;
  BigRat beta;
  BigRat eta;
  double random_lower = 0;
  double t_opt = 0;    // (1-beta)^(1/beta), maximizer of t^(1-beta) - t
  double ratio_g = 0;  // limits 1/e and 1 used at beta endpoints
  bool equality_n_2k_plus_1 = false;
  bool perfect_code_case = false;  // (k=1, n+1 a power of 2) or (k=3, n=23)
};

/// Pure arithmetic, so the cap is looser than the core n <= 32 limit.
inline constexpr int max_bounds_dim = 64;

BoundsReport bounds_report(int n, int k);

}  // namespace subcubes
