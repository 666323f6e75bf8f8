#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "subcubes/bounds.hpp"
#include "subcubes/certificates.hpp"
#include "subcubes/constructions.hpp"
#include "subcubes/cube.hpp"
#include "test_util.hpp"

using namespace subcubes;
using namespace subcubes::testutil;

TEST_CASE("binomial against Pascal's rule") {
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) {
      BigInt expect = (k == 0 || k == n)
                          ? BigInt(1)
                          : binomial(n - 1, k - 1) + binomial(n - 1, k);
      CHECK(binomial(n, k) == expect);
    }
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
}

TEST_CASE("linear-independence upper bound") {
  CHECK(ah_upper(5, 3) == 16);
  for (int n = 1; n <= 12; ++n) {
    CHECK(ah_upper(n, n) == 1);
    CHECK(ah_upper(n, 0) == BigInt(1) << n);
  }
  CHECK_THROWS_AS(ah_upper(4, 5), std::invalid_argument);
}

TEST_CASE("combinatorial upper bound") {
  CHECK(meshulam_upper(7, 3) == BigRat(70));
  CHECK(meshulam_upper(5, 3) == BigRat(160, 13));
  CHECK(floor_rational(meshulam_upper(5, 3)) == 12);
  for (int n = 1; n <= 12; ++n) CHECK(meshulam_upper(n, n) == BigRat(1));
  // Tightness at n = 2k+1: the bound is the integer 2*C(2k+1, k).
  for (int k = 1; k <= 8; ++k) {
    BigRat bound = meshulam_upper(2 * k + 1, k);
    CHECK(denominator(bound) == 1);
    CHECK(numerator(bound) == 2 * binomial(2 * k + 1, k));
  }
}

TEST_CASE("grid upper bound") {
  // m = 2 must agree with the binary bound.
  for (int n = 1; n <= 10; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(meshulam_grid_upper(2, n, k) == meshulam_upper(n, k));
  CHECK(meshulam_grid_upper(3, 2, 1) == BigRat(9, 2));
  for (int m = 2; m <= 5; ++m)
    for (int n = 1; n <= 6; ++n)
      CHECK(meshulam_grid_upper(m, n, n) == BigRat(1));
  CHECK_THROWS_AS(meshulam_grid_upper(1, 3, 1), std::invalid_argument);
}

TEST_CASE("beta and eta") {
  for (int n = 1; n <= 12; ++n) CHECK(beta(n, 0) == BigRat(1));
  CHECK(beta(10, 3) == BigRat(15, 22));
  CHECK(beta(4, 2) == BigRat(6, 11));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 20);
    int k = static_cast<int>(rng() % (n + 1));
    CHECK(beta(n, k) + eta(n, k) == BigRat(1));
    CHECK(beta(n, k) > 0);
    CHECK(beta(n, k) <= 1);
  }
}

TEST_CASE("randomized lower bound") {
  for (int n = 1; n <= 10; ++n)
    CHECK(random_lower(n, 0) == doctest::Approx(std::ldexp(1.0, n)));
  CHECK(random_lower_factor(0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(random_lower_factor(0.0), std::invalid_argument);
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(random_lower(n, k) <=
            rational_double(meshulam_upper(n, k)) + 1e-9);
}

TEST_CASE("binary entropy and its half point") {
  CHECK(entropy(0.5) == doctest::Approx(1.0));
  for (double g : {0.1, 0.25, 0.33, 0.41})
    CHECK(entropy(g) == doctest::Approx(entropy(1.0 - g)));
  CHECK_THROWS_AS(entropy(0.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy(1.0), std::invalid_argument);

  double g0 = gamma0();
  CHECK(std::fabs(g0 - 0.8900) <= 5e-5);
  CHECK(std::fabs(entropy(g0) - 0.5) <= 1e-12);
}

TEST_CASE("bound ratio g") {
  CHECK(ratio_g(0.5) == doctest::Approx(0.5));
  CHECK(std::fabs(ratio_g(1e-6) - 1.0 / std::exp(1.0)) < 1e-4);
  CHECK_THROWS_AS(ratio_g(0.0), std::domain_error);
  CHECK_THROWS_AS(ratio_g(1.0), std::domain_error);
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    double b = i / 1001.0;
    double g = ratio_g(b);
    CHECK(g >= 1.0 / std::exp(1.0) - 1e-12);
    CHECK(g <= 1.0 + 1e-12);
    if (i > 1) CHECK(g > prev - 1e-12);
    prev = g;
  }
}

TEST_CASE("bounds report flags") {
  BoundsReport r = bounds_report(7, 3);
  CHECK(r.equality_n_2k_plus_1);
  CHECK(r.meshulam == BigRat(70));
  CHECK(bounds_report(7, 1).perfect_code_case);
  CHECK(bounds_report(23, 3).perfect_code_case);
  CHECK_FALSE(bounds_report(5, 3).perfect_code_case);
  CHECK_FALSE(bounds_report(5, 3).equality_n_2k_plus_1);
  BoundsReport r0 = bounds_report(6, 0);
  CHECK(r0.ratio_g == doctest::Approx(1.0));  // beta = 1 limit
  CHECK(r0.t_opt == doctest::Approx(0.0));
}

TEST_CASE("summation identity behind the combinatorial bound") {
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      BigRat lhs = 0, rhs = 0;
      for (int l = 0; l <= k; ++l) {
        lhs += BigRat(binomial(k, l), binomial(l + n - k, n - k));
        rhs += BigRat(binomial(n, l), binomial(n, k));
      }
      CHECK(lhs == rhs);
    }
}

TEST_CASE("private assignments") {
  Family f0 = Family::from_words({"**0", "*0*", "0**"});
  PrivateAssignment a = smallest_private_assignment(f0);
  REQUIRE(a.w.size() == 3);
  CHECK(a.w[0] == parse_vertex("110").bits);
  CHECK(is_valid_assignment(f0, a));

  PrivateAssignment bad;
  bad.w = {0, 0, 0};  // the all-zero vertex lies in every member
  CHECK_FALSE(is_valid_assignment(f0, bad));
  CHECK_THROWS_AS(bollobas_certificate(f0, bad, Vertex(0, 3)),
                  std::invalid_argument);

  CHECK_THROWS_AS(
      smallest_private_assignment(Family::from_words({"0**", "1**", "**0"})),
      std::invalid_argument);

  // A member whose private vertices all have weight above the radius.
  Family high = Family::from_words({"11*"});
  CHECK_THROWS_AS(smallest_ball_assignment(high, 1), std::invalid_argument);
}

TEST_CASE("set-pair certificate values") {
  Family f0 = Family::from_words({"**0", "*0*", "0**"});
  PrivateAssignment a = smallest_private_assignment(f0);
  CHECK(bollobas_certificate(f0, a, Vertex(0, 3)) == BigRat(1));
  // The all-one vertex lies in no member.
  CHECK(bollobas_certificate(f0, a, Vertex(7, 3)) == BigRat(0));

  CertificateMax mx = max_bollobas_certificate(f0, a);
  CHECK(mx.value == BigRat(1));
  CHECK(mx.argmax == 0);
}

TEST_CASE("certificates stay at most 1 on random irredundant families") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);  // 2..5
    int k = 1 + static_cast<int>(rng() % n);
    std::vector<Subcube> pool;
    for (mask_t moving = 0; moving <= full_mask(n); ++moving) {
      if (weight(moving) != k) continue;
      for (mask_t values = 0; values <= full_mask(n); ++values)
        if (!(values & ~full_mask(n)) && !(moving & values) &&
            !(values & ~(full_mask(n) & ~moving)))
          pool.emplace_back(n, moving, values);
    }
    Family f = random_irredundant_family(n, k, pool, rng);
    if (f.empty()) continue;
    PrivateAssignment a = smallest_private_assignment(f);
    CertificateMax mx = max_bollobas_certificate(f, a);
    CHECK(mx.value <= BigRat(1));
  }
}

TEST_CASE("averaging the certificate reproduces the combinatorial bound") {
  // Summing over all vertices gives |F| * sum_l C(k,l)/C(l+n-k, n-k), and
  // since every term is at most 1 the combinatorial bound follows.
  auto per_member_sum = [](int n, int k) {
    BigRat s = 0;
    for (int l = 0; l <= k; ++l)
      s += BigRat(binomial(k, l), binomial(l + n - k, n - k));
    return s;
  };
  std::mt19937 rng(43);
  std::vector<Family> families = {
      Family::from_words({"**0", "*0*", "0**"}),
      principal(4, 2, Vertex(0b1010, 4)),
      translates(4, 0b0011),
      exceptional_5_3(),
  };
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + static_cast<int>(rng() % 2);
    int k = 1 + static_cast<int>(rng() % n);
    std::vector<Subcube> pool;
    for (mask_t moving = 0; moving <= full_mask(n); ++moving) {
      if (weight(moving) != k) continue;
      for (mask_t values = 0; values <= full_mask(n); ++values)
        if (!(moving & values) && !(values & ~full_mask(n)))
          pool.emplace_back(n, moving, values);
    }
    Family f = random_irredundant_family(n, k, pool, rng);
    if (!f.empty()) families.push_back(f);
  }
  for (const Family& f : families) {
    PrivateAssignment a = smallest_private_assignment(f);
    BigRat total = bollobas_certificate_total(f, a);
    CHECK(total == BigRat(f.size()) * per_member_sum(f.n(), f.k()));
    CHECK(total <= BigRat(BigInt(1) << f.n()));
    // Rearranged, that is exactly |F| <= meshulam_upper(n, k).
    CHECK(BigRat(f.size()) <= meshulam_upper(f.n(), f.k()));
  }
}

TEST_CASE("ball certificate") {
  Family f0 = principal(4, 2, Vertex(0, 4));
  PrivateAssignment a = smallest_ball_assignment(f0, 2);
  // For a weight-k vertex x, only the member with moving set x has x in its
  // interval [w, u], contributing exactly 1/C(0+0, 0) = 1.
  for (mask_t x = 0; x < 16; ++x) {
    if (weight(x) != 2) continue;
    CHECK(ball_certificate(f0, a, Vertex(x, 4)) == BigRat(1));
  }
  CertificateMax mx = max_ball_certificate(f0, a);
  CHECK(mx.value == BigRat(1));

  // A single member far from x contributes nothing.
  Family one = Family::from_words({"**00"});
  PrivateAssignment a1 = smallest_ball_assignment(one, 2);
  CHECK(ball_certificate(one, a1, parse_vertex("0011")) == BigRat(0));

  // Preconditions: x must have weight exactly k, privates must fit the ball.
  CHECK_THROWS_AS(ball_certificate(f0, a, Vertex(0, 4)),
                  std::invalid_argument);
  Family high = Family::from_words({"11*"});
  PrivateAssignment ah;
  ah.w = {parse_vertex("110").bits};
  CHECK_THROWS_AS(ball_certificate(high, ah, parse_vertex("100")),
                  std::invalid_argument);
}

TEST_CASE("ball certificate on random ball-constrained subfamilies") {
  std::mt19937 rng(47);
  int done = 0;
  while (done < 20) {
    int n = 3 + static_cast<int>(rng() % 3);  // 3..5
    int k = 1 + static_cast<int>(rng() % n);
    std::vector<Subcube> pool;
    for (mask_t moving = 0; moving <= full_mask(n); ++moving) {
      if (weight(moving) != k) continue;
      for (mask_t values = 0; values <= full_mask(n); ++values)
        if (!(moving & values) && !(values & ~full_mask(n)) &&
            weight(values) <= k)
          pool.emplace_back(n, moving, values);
    }
    Family f = random_irredundant_family(n, k, pool, rng);
    if (f.empty()) continue;
    PrivateAssignment a;
    try {
      a = smallest_ball_assignment(f, k);
    } catch (const std::invalid_argument&) {
      continue;  // no in-ball private assignment for this draw
    }
    ++done;
    CHECK(max_ball_certificate(f, a).value <= BigRat(1));
  }
}
