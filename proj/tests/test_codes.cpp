#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "subcubes/bounds.hpp"
#include "subcubes/codes.hpp"

using namespace subcubes;

namespace {

// Plain recursive maximum-separated-set search, no bounds beyond size, used
// as the oracle for the branch-and-bound implementation.
void oracle_extend(const std::vector<mask_t>& vertices, std::size_t start,
                   std::vector<mask_t>& current, int d,
                   std::vector<mask_t>& best) {
  if (current.size() > best.size()) best = current;
  for (std::size_t i = start; i < vertices.size(); ++i) {
    bool ok = true;
    for (mask_t chosen : current)
      if (hamming_bits(chosen, vertices[i]) < d) {
        ok = false;
        break;
      }
    if (!ok) continue;
    current.push_back(vertices[i]);
    oracle_extend(vertices, i + 1, current, d, best);
    current.pop_back();
  }
}

std::vector<mask_t> oracle_max_separated(int n, int d) {
  std::vector<mask_t> vertices;
  for (mask_t v = 0; v < (mask_t{1} << n); ++v) vertices.push_back(v);
  std::vector<mask_t> current, best;
  oracle_extend(vertices, 0, current, d, best);
  return best;
}

// Lexicographically smallest maximum set: depth-first taking smallest
// extensions first, first full-size hit wins.
bool oracle_lex(const std::vector<mask_t>& vertices, std::size_t start,
                std::vector<mask_t>& current, int d, std::size_t target,
                std::vector<mask_t>& out) {
  if (current.size() == target) {
    out = current;
    return true;
  }
  for (std::size_t i = start; i < vertices.size(); ++i) {
    bool ok = true;
    for (mask_t chosen : current)
      if (hamming_bits(chosen, vertices[i]) < d) {
        ok = false;
        break;
      }
    if (!ok) continue;
    current.push_back(vertices[i]);
    if (oracle_lex(vertices, i + 1, current, d, target, out)) return true;
    current.pop_back();
  }
  return false;
}

}  // namespace

TEST_CASE("hamming codes") {
  Code h2 = hamming_code(2);
  CHECK(h2.n == 3);
  CHECK(h2.words == std::vector<mask_t>{0, 7});

  Code h3 = hamming_code(3);
  CHECK(h3.n == 7);
  CHECK(h3.words.size() == 16);
  CHECK(min_distance(h3) == 3);
  CHECK(min_distance_pairwise_serial(h3) == 3);
  CHECK(is_perfect(h3, 1));
  // Counting form of perfectness: 16 * (1 + 7) = 2^7.
  CHECK(h3.words.size() * 8 == 128);

  Code h4 = hamming_code(4);
  CHECK(h4.n == 15);
  CHECK(h4.words.size() == 2048);
  CHECK(min_distance(h4) == 3);
  CHECK(is_perfect(h4, 1));

  CHECK_THROWS_AS(hamming_code(1), std::invalid_argument);
  CHECK_THROWS_AS(hamming_code(6), std::invalid_argument);
}

TEST_CASE("golay code") {
  Code g = golay_code();
  CHECK(g.n == 23);
  CHECK(g.words.size() == 4096);
  CHECK(min_distance(g) == 7);
  CHECK(is_perfect_algebraic(g, 3));
  CHECK(is_perfect_sweep(g, 3));
  // Sphere counting: 4096 * 2048 = 2^23.
  BigInt ball = 0;
  for (int i = 0; i <= 3; ++i) ball += binomial(23, i);
  CHECK(ball == 2048);
}

TEST_CASE("golay min distance agrees with a pairwise scan") {
  Code g = golay_code();
  Code unflagged = g;
  unflagged.linear = false;
  unflagged.claimed_min_distance.reset();
  CHECK(min_distance(unflagged) == 7);
}

TEST_CASE("trivial codes") {
  Code t7 = trivial_code(7);
  CHECK(t7.words == std::vector<mask_t>{0, full_mask(7)});
  CHECK(min_distance(t7) == 7);
  CHECK(is_perfect(trivial_code(5), 2));
  CHECK(is_perfect(trivial_code(7), 3));
  CHECK_FALSE(is_perfect(trivial_code(6), 2));
  CHECK_FALSE(is_perfect(trivial_code(4), 2));
}

TEST_CASE("min distance requires two words and ignores translation") {
  Code single;
  single.n = 4;
  single.words = {5};
  CHECK_THROWS_AS(min_distance(single), std::invalid_argument);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 8);
    Code c;
    c.n = n;
    std::vector<mask_t> words;
    for (int i = 0; i < 10; ++i)
      words.push_back(static_cast<mask_t>(rng()) & full_mask(n));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    if (words.size() < 2) continue;
    c.words = words;
    int base = min_distance_pairwise_serial(c);
    mask_t t = static_cast<mask_t>(rng()) & full_mask(n);
    Code shifted = c;
    for (mask_t& w : shifted.words) w ^= t;
    std::sort(shifted.words.begin(), shifted.words.end());
    CHECK(min_distance_pairwise_serial(shifted) == base);
    CHECK(is_separated(c, base));
    CHECK_FALSE(is_separated(c, base + 1));
  }
}

TEST_CASE("perfectness: sweep and algebraic criteria agree") {
  std::vector<std::pair<Code, int>> cases = {
      {hamming_code(3), 1}, {hamming_code(4), 1}, {trivial_code(5), 2},
      {trivial_code(7), 3}, {trivial_code(6), 2}, {hamming_code(3), 2},
  };
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Code c;
    c.n = 8;
    std::vector<mask_t> words;
    for (int i = 0; i < 6; ++i)
      words.push_back(static_cast<mask_t>(rng()) & full_mask(8));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    c.words = words;
    cases.emplace_back(c, 1 + static_cast<int>(rng() % 3));
  }
  for (const auto& [code, k] : cases)
    CHECK(is_perfect_sweep_serial(code, k) == is_perfect_algebraic(code, k));
}

TEST_CASE("maximum separated sets") {
  auto r42 = max_separated_set(4, 2);
  CHECK(r42.size == 8);
  // All even-weight vertices form such a set and are lexicographically first.
  std::vector<mask_t> evens;
  for (mask_t v = 0; v < 16; ++v)
    if (weight(v) % 2 == 0) evens.push_back(v);
  CHECK(r42.witness == evens);

  CHECK(max_separated_set(5, 5).size == 2);
  CHECK(max_separated_set(5, 5).witness == std::vector<mask_t>{0, 31});
  CHECK(max_separated_set(6, 3).size == 8);
  CHECK(max_separated_set(3, 7).size == 1);

  CHECK_THROWS_AS(max_separated_set(13, 2), std::invalid_argument);
  CHECK_THROWS_AS(max_separated_set(4, 0), std::invalid_argument);
}

TEST_CASE("separated-set search matches brute force") {
  for (int n = 1; n <= 5; ++n)
    for (int d = 1; d <= n; ++d) {
      auto oracle = oracle_max_separated(n, d);
      auto result = max_separated_set(n, d);
      CHECK(result.size == static_cast<int>(oracle.size()));
      // Witness is valid and lexicographically smallest.
      for (std::size_t i = 0; i < result.witness.size(); ++i)
        for (std::size_t j = i + 1; j < result.witness.size(); ++j)
          CHECK(hamming_bits(result.witness[i], result.witness[j]) >= d);
      std::vector<mask_t> vertices;
      for (mask_t v = 0; v < (mask_t{1} << n); ++v) vertices.push_back(v);
      std::vector<mask_t> current, lex;
      oracle_lex(vertices, 0, current, d, oracle.size(), lex);
      CHECK(result.witness == lex);
    }
}

TEST_CASE("half-distance separated sets respect the parity case split") {
  // n odd: n+1; n = 2 mod 4: n+2; n = 0 mod 4: 2n. Small cases here, the
  // larger ones run in the acceptance suite.
  CHECK(max_separated_set(2, 1).size <= 4);
  CHECK(max_separated_set(4, 2).size <= 8);
  CHECK(max_separated_set(6, 3).size <= 8);
  CHECK(max_separated_set(3, 2).size <= 4);  // ceil(n/2) rounding side case
  CHECK(max_separated_set(5, 3).size <= 6);
}

TEST_CASE("codes from vertex lists") {
  std::vector<Vertex> vs = {parse_vertex("0000"), parse_vertex("1111")};
  Code c = code_from_vertices(vs);
  CHECK(c.n == 4);
  CHECK(min_distance(c) == 4);
  CHECK_FALSE(c.linear);
  CHECK(code_vertices(c).size() == 2);

  CHECK_THROWS_AS(code_from_vertices({}), std::invalid_argument);
  CHECK_THROWS_AS(
      code_from_vertices({parse_vertex("00"), parse_vertex("00")}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      code_from_vertices({parse_vertex("00"), parse_vertex("000")}),
      std::invalid_argument);
}
