#include "subcubes/codes.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <stdexcept>

#include "subcubes/bounds.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

namespace {

void verify_claimed_distance(Code& code) {
  if (!code.claimed_min_distance) return;
  int actual = min_distance(code);
  if (actual != *code.claimed_min_distance)
    throw std::logic_error("generated code has min distance " +
                           std::to_string(actual) + ", expected " +
                           std::to_string(*code.claimed_min_distance));
}

/// Enumerates the span of a GF(2) basis in Gray-code order.
std::vector<mask_t> span(const std::vector<mask_t>& basis) {
  std::vector<mask_t> words(std::size_t{1} << basis.size());
  mask_t current = 0;
  words[0] = 0;
  for (std::size_t i = 1; i < words.size(); ++i) {
    std::size_t changed = std::countr_zero(i);
    current ^= basis[changed];
    words[i] = current;
  }
  std::sort(words.begin(), words.end());
  return words;
}

std::vector<mask_t> masks_of_weight_at_most(int n, int k) {
  std::vector<mask_t> out;
  for (int w = 0; w <= k; ++w) {
    if (w == 0) {
      out.push_back(0);
      continue;
    }
    mask_t m = full_mask(w);
    mask_t last = full_mask(n) & ~full_mask(n - w);
    for (;;) {
      out.push_back(m);
      if (m == last) break;
      mask_t u = m & -m;
      mask_t v = m + u;
      m = v | (((m ^ v) >> 2) / u);
    }
  }
  return out;
}

}  // namespace

Code hamming_code(int s) {
  if (s < 2 || s > 5)
    throw std::invalid_argument("hamming_code: s must be in [2, 5]");
  int n = (1 << s) - 1;
  // Column i of the check matrix is the binary expansion of i (1-based).
  // A word is a codeword iff the XOR of its set column indices vanishes;
  // one basis vector per non-power-of-two position j pairs j with the
  // parity positions of its binary expansion.
  std::vector<mask_t> basis;
  for (int j = 1; j <= n; ++j) {
    if ((j & (j - 1)) == 0) continue;  // parity position
    mask_t v = mask_t{1} << (j - 1);
    for (int b = 0; b < s; ++b)
      if (j & (1 << b)) v |= mask_t{1} << ((1 << b) - 1);
    basis.push_back(v);
  }
  Code code;
  code.n = n;
  code.words = span(basis);
  code.claimed_min_distance = 3;
  code.linear = true;
  verify_claimed_distance(code);
  return code;
}

Code golay_code() {
  // Cyclic [23,12,7] code: rows are x^i * g(x) for the quadratic-residue
  // generator g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1.
  constexpr mask_t generator = 0xC75;
  std::vector<mask_t> basis;
  for (int i = 0; i < 12; ++i) basis.push_back(generator << i);
  Code code;
  code.n = 23;
  code.words = span(basis);
  code.claimed_min_distance = 7;
  code.linear = true;
  verify_claimed_distance(code);
  return code;
}

Code trivial_code(int n) {
  if (n < 1 || n > max_dim)
    throw std::invalid_argument("trivial_code: n must be in [1, 32]");
  Code code;
  code.n = n;
  code.words = {0, full_mask(n)};
  code.claimed_min_distance = n;
  code.linear = true;
  verify_claimed_distance(code);
  return code;
}

int min_distance(const Code& code) {
  if (code.words.size() < 2)
    throw std::invalid_argument("min_distance needs at least 2 codewords");
  if (code.linear) {
    int best = code.n + 1;
    const auto& words = code.words;
#pragma omp parallel for schedule(static) reduction(min : best)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(words.size()); ++i) {
      if (words[i] == 0) continue;
      best = std::min(best, weight(words[i]));
    }
    return best;
  }
  return min_distance_pairwise(code);
}

int min_distance_pairwise_serial(const Code& code) {
  if (code.words.size() < 2)
    throw std::invalid_argument("min_distance needs at least 2 codewords");
  int best = code.n;
  for (std::size_t i = 0; i < code.words.size(); ++i)
    for (std::size_t j = i + 1; j < code.words.size(); ++j)
      best = std::min(best, hamming_bits(code.words[i], code.words[j]));
  return best;
}

int min_distance_pairwise(const Code& code) {
  if (code.words.size() < 2)
    throw std::invalid_argument("min_distance needs at least 2 codewords");
  int best = code.n;
  const auto& words = code.words;
  const std::int64_t m = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = i + 1; j < m; ++j)
      best = std::min(best, hamming_bits(words[i], words[j]));
  return best;
}

bool is_separated(const Code& code, int d) { return min_distance(code) >= d; }

bool is_perfect_algebraic(const Code& code, int k) {
  if (k < 0 || k > code.n) throw std::invalid_argument("is_perfect: bad k");
  if (code.words.empty()) return false;
  if (code.words.size() >= 2 && min_distance(code) < 2 * k + 1) return false;
  BigInt ball = 0;
  for (int i = 0; i <= k; ++i) ball += binomial(code.n, i);
  return BigInt(code.words.size()) * ball == (BigInt(1) << code.n);
}

namespace {

bool perfect_sweep_impl(const Code& code, int k, bool parallel) {
  if (k < 0 || k > code.n) throw std::invalid_argument("is_perfect: bad k");
  if (code.n > 24)
    throw std::invalid_argument("is_perfect sweep capped at n <= 24");
  if (code.words.empty()) return false;
  std::vector<mask_t> ball = masks_of_weight_at_most(code.n, k);
  std::vector<std::uint8_t> covered(std::size_t{1} << code.n, 0);
  bool clash = false;
  const std::int64_t m = static_cast<std::int64_t>(code.words.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < m; ++i) {
    for (mask_t delta : ball) {
      std::atomic_ref<std::uint8_t> cell(covered[code.words[i] ^ delta]);
      if (cell.fetch_add(1, std::memory_order_relaxed) != 0) {
#pragma omp atomic write
        clash = true;
      }
    }
  }
  if (clash) return false;
  std::uint64_t hit = 0;
#pragma omp parallel for schedule(static) reduction(+ : hit) if (parallel)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(covered.size()); ++x)
    hit += covered[x];
  return hit == covered.size();
}

}  // namespace

bool is_perfect_sweep_serial(const Code& code, int k) {
  return perfect_sweep_impl(code, k, false);
}

bool is_perfect_sweep(const Code& code, int k) {
  return perfect_sweep_impl(code, k, true);
}

bool is_perfect(const Code& code, int k) {
  if (code.n <= 24) return is_perfect_sweep(code, k);
  return is_perfect_algebraic(code, k);
}

namespace {

// Branch and bound for maximum separated sets as a maximum-clique search on
// the distance->=d graph, with a greedy-coloring bound (Tomita-style).
class SeparatedSearch {
 public:
  SeparatedSearch(int n, int d) : n_(n), d_(d), count_(std::size_t{1} << n) {
    words_per_set_ = (count_ + 63) / 64;
    adj_.assign(count_ * words_per_set_, 0);
    for (std::size_t u = 0; u < count_; ++u)
      for (std::size_t v = u + 1; v < count_; ++v)
        if (hamming_bits(static_cast<mask_t>(u), static_cast<mask_t>(v)) >=
            d_) {
          set_bit(&adj_[u * words_per_set_], v);
          set_bit(&adj_[v * words_per_set_], u);
        }
  }

  SeparatedSetResult run() {
    best_ = 1;
    // By translation invariance some maximum set contains the all-zero
    // vertex, and that one is also lexicographically smallest.
    std::vector<std::uint64_t> cand(words_per_set_);
    std::memcpy(cand.data(), &adj_[0], words_per_set_ * 8);
    std::vector<int> chosen{0};
    expand(chosen, cand);

    SeparatedSetResult result;
    result.size = best_;
    std::vector<int> acc{0};
    extract_lex_witness(acc, std::vector<std::uint64_t>(
                                 adj_.begin(), adj_.begin() + words_per_set_),
                        result.witness);
    return result;
  }

 private:
  static void set_bit(std::uint64_t* w, std::size_t i) {
    w[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  static bool test_bit(const std::uint64_t* w, std::size_t i) {
    return (w[i >> 6] >> (i & 63)) & 1;
  }
  static void clear_bit(std::uint64_t* w, std::size_t i) {
    w[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  const std::uint64_t* adj_row(std::size_t v) const {
    return &adj_[v * words_per_set_];
  }

  bool empty_set(const std::vector<std::uint64_t>& s) const {
    for (std::uint64_t w : s)
      if (w) return false;
    return true;
  }

  int popcount_set(const std::vector<std::uint64_t>& s) const {
    int c = 0;
    for (std::uint64_t w : s) c += std::popcount(w);
    return c;
  }

  template <typename F>
  void for_each_in_set(const std::vector<std::uint64_t>& s, F&& f) const {
    for (std::size_t wi = 0; wi < s.size(); ++wi) {
      std::uint64_t w = s[wi];
      while (w) {
        f(wi * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  // Greedy coloring: vertices listed in increasing color, color c bounding
  // any clique inside the first c classes.
  void color_order(const std::vector<std::uint64_t>& cand,
                   std::vector<int>& order, std::vector<int>& colors) const {
    order.clear();
    colors.clear();
    std::vector<std::uint64_t> remaining = cand;
    int color = 0;
    std::vector<std::uint64_t> q(words_per_set_);
    while (!empty_set(remaining)) {
      ++color;
      q = remaining;
      for (std::size_t wi = 0; wi < q.size(); ++wi) {
        while (q[wi]) {
          std::size_t u = wi * 64 + std::countr_zero(q[wi]);
          order.push_back(static_cast<int>(u));
          colors.push_back(color);
          clear_bit(remaining.data(), u);
          clear_bit(q.data(), u);
          const std::uint64_t* nb = adj_row(u);
          for (std::size_t j = wi; j < q.size(); ++j) q[j] &= ~nb[j];
        }
      }
    }
  }

  void expand(std::vector<int>& chosen, std::vector<std::uint64_t> cand) {
    std::vector<int> order, colors;
    color_order(cand, order, colors);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(chosen.size()) + colors[i] <= best_) return;
      int v = order[i];
      clear_bit(cand.data(), v);
      std::vector<std::uint64_t> next(words_per_set_);
      const std::uint64_t* nb = adj_row(v);
      bool any = false;
      for (std::size_t j = 0; j < next.size(); ++j) {
        next[j] = cand[j] & nb[j];
        any |= next[j] != 0;
      }
      chosen.push_back(v);
      if (!any) {
        best_ = std::max(best_, static_cast<int>(chosen.size()));
      } else {
        expand(chosen, std::move(next));
      }
      chosen.pop_back();
    }
  }

  // Depth-first in numeric order, taking the smallest extension first; the
  // first completed set of size best_ is the lexicographically smallest.
  bool extract_lex_witness(std::vector<int>& acc,
                           std::vector<std::uint64_t> cand,
                           std::vector<mask_t>& out) {
    if (static_cast<int>(acc.size()) == best_) {
      out.assign(acc.begin(), acc.end());
      return true;
    }
    if (static_cast<int>(acc.size()) + popcount_set(cand) < best_) return false;
    bool done = false;
    for_each_in_set(cand, [&](std::size_t v) {
      if (done) return;
      std::vector<std::uint64_t> next(words_per_set_);
      const std::uint64_t* nb = adj_row(v);
      for (std::size_t j = 0; j < next.size(); ++j) {
        next[j] = cand[j] & nb[j];
        // only keep candidates above v to enumerate increasing sequences
      }
      std::size_t wi = v >> 6;
      next[wi] &= ~((std::uint64_t{2} << (v & 63)) - 1);
      for (std::size_t j = 0; j < wi; ++j) next[j] = 0;
      acc.push_back(static_cast<int>(v));
      done = extract_lex_witness(acc, std::move(next), out);
      if (!done) acc.pop_back();
    });
    return done;
  }

  int n_;
  int d_;
  std::size_t count_;
  std::size_t words_per_set_;
  std::vector<std::uint64_t> adj_;
  int best_ = 1;
};

}  // namespace

SeparatedSetResult max_separated_set(int n, int d) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("max_separated_set capped at n <= 12");
  if (d < 1) throw std::invalid_argument("max_separated_set: d must be >= 1");
  if (d > n) return SeparatedSetResult{1, {0}};
  SeparatedSearch search(n, d);
  return search.run();
}

Code code_from_vertices(const std::vector<Vertex>& vs) {
  if (vs.empty()) throw std::invalid_argument("code needs at least one word");
  Code code;
  code.n = vs.front().n;
  for (const Vertex& v : vs) {
    if (v.n != code.n)
      throw std::invalid_argument("code words have mixed lengths");
    code.words.push_back(v.bits);
  }
  std::sort(code.words.begin(), code.words.end());
  if (std::adjacent_find(code.words.begin(), code.words.end()) !=
      code.words.end())
    throw std::invalid_argument("code contains duplicate words");
  return code;
}

std::vector<Vertex> code_vertices(const Code& code) {
  std::vector<Vertex> out;
  out.reserve(code.words.size());
  for (mask_t w : code.words) out.emplace_back(w, code.n);
  return out;
}

}  // namespace subcubes
