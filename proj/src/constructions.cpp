#include "subcubes/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

#include "subcubes/bounds.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

namespace {

mask_t next_combination(mask_t v) {
  mask_t u = v & -v;
  mask_t w = v + u;
  return w | (((v ^ w) >> 2) / u);
}

template <typename F>
void for_each_k_subset(mask_t universe, int k, F&& visit) {
  int bits[max_dim];
  int m = 0;
  mask_t u = universe;
  while (u) {
    bits[m++] = std::countr_zero(u);
    u &= u - 1;
  }
  if (k > m) return;
  if (k == 0) {
    visit(mask_t{0});
    return;
  }
  // Enumerate k-subsets of the universe by spreading combination masks of
  // its bit positions; ascending in the spread mask because the positions
  // are ascending.
  mask_t comb = full_mask(k);
  mask_t last = full_mask(m) & ~full_mask(m - k);
  for (;;) {
    mask_t spread = 0;
    mask_t c = comb;
    while (c) {
      spread |= mask_t{1} << bits[std::countr_zero(c)];
      c &= c - 1;
    }
    visit(spread);
    if (comb == last) break;
    comb = next_combination(comb);
  }
}

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Family principal(int n, int k, const Vertex& v) {
  if (v.n != n) throw std::invalid_argument("principal: anchor has wrong n");
  if (k < 0 || k > n) throw std::invalid_argument("principal: bad k");
  std::vector<Subcube> members;
  for_each_k_subset(full_mask(n), k, [&](mask_t moving) {
    members.emplace_back(n, moving, v.bits & ~moving);
  });
  return Family(n, k, std::move(members));
}

Family translates(int n, mask_t moving) {
  if (n < 1 || n > max_dim) throw std::invalid_argument("translates: bad n");
  if (moving & ~full_mask(n))
    throw std::invalid_argument("translates: moving set exceeds dimension");
  std::vector<Subcube> members;
  mask_t fixed = full_mask(n) & ~moving;
  mask_t values = 0;
  for (;;) {
    members.emplace_back(n, moving, values);
    if (values == fixed) break;
    values = (values - fixed) & fixed;
  }
  return Family(n, weight(moving), std::move(members));
}

Family from_code(int n, int k, const Code& code) {
  if (code.n != n) throw std::invalid_argument("from_code: code length != n");
  if (k < 0 || k > n) throw std::invalid_argument("from_code: bad k");
  if (code.words.size() >= 2 && min_distance(code) < 2 * k + 1)
    throw std::invalid_argument(
        "from_code: code min distance below 2k+1; principal families would "
        "overlap");
  std::vector<Subcube> members;
  for (mask_t w : code.words)
    for_each_k_subset(full_mask(n), k, [&](mask_t moving) {
      members.emplace_back(n, moving, w & ~moving);
    });
  return Family(n, k, std::move(members));
}

Family b_family(int k) {
  if (k < 1) throw std::invalid_argument("b_family: k must be >= 1");
  int n = 2 * k;
  if (n > max_dim) throw std::invalid_argument("b_family: 2k exceeds 32");
  std::vector<Subcube> members;
  // Through the all-zero vertex, moving set containing coordinate 0.
  for_each_k_subset(full_mask(n), k, [&](mask_t x) {
    if (x & 1) members.emplace_back(n, x, 0);
  });
  // Through the all-one vertex, fixed set avoiding coordinate n-1.
  mask_t top = mask_t{1} << (n - 1);
  for_each_k_subset(full_mask(n), k, [&](mask_t x) {
    if (!(x & top)) members.emplace_back(n, full_mask(n) & ~x, x);
  });
  return Family(n, k, std::move(members));
}

Family e_extension(int k) {
  if (k < 2) throw std::invalid_argument("e_extension: k must be >= 2");
  int n = 2 * k;
  if (n > max_dim) throw std::invalid_argument("e_extension: 2k exceeds 32");
  mask_t top = mask_t{1} << (n - 1);
  mask_t middle = full_mask(n - 1) & ~full_mask(2);  // coordinates 2..n-2
  std::vector<Subcube> members;
  for_each_k_subset(middle, k - 1, [&](mask_t extra) {
    members.emplace_back(n, mask_t{2} | extra, top);
  });
  return Family(n, k, std::move(members));
}

Family exceptional_5_3() {
  return Family::from_words({
      "***00", "0***0", "00***", "*00**", "**00*",
      "***11", "1***1", "11***", "*11**", "**11*",
  });
}

std::array<mask_t, 10> exceptional_5_3_private_vertices() {
  std::array<const char*, 10> words = {
      "10100", "01010", "00101", "10010", "01001",
      "01011", "10101", "11010", "01101", "10110",
  };
  std::array<mask_t, 10> out{};
  for (std::size_t i = 0; i < words.size(); ++i)
    out[i] = parse_vertex(words[i]).bits;
  return out;
}

Family product_k1(int n) {
  if (n < 3) throw std::invalid_argument("product_k1: n must be >= 3");
  if (n > max_dim) throw std::invalid_argument("product_k1: n exceeds 32");
  int s = 2;
  while ((1 << (s + 1)) - 1 <= n) ++s;
  int m = (1 << s) - 1;
  Family base = from_code(m, 1, hamming_code(s));
  int r = n - m;
  std::vector<Subcube> members;
  members.reserve(base.size() << r);
  for (mask_t high = 0; high < (mask_t{1} << r); ++high)
    for (const Subcube& c : base.members())
      members.emplace_back(n, c.moving, c.values | (high << m));
  return Family(n, 1, std::move(members));
}

double optimal_p(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("optimal_p: need 1 <= k <= n");
  double b = rational_double(beta(n, k));
  // (1-p)^{sum C(n,i)} = (1-b)^{1/b}  =>  1-p = (1-b)^{1/(b*sum)} and
  // b*sum = C(n,k).
  double cnk = binomial(n, k).convert_to<double>();
  return 1.0 - std::pow(1.0 - b, 1.0 / cnk);
}

double expected_random_size(int n, int k, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("expected_random_size: p must be in (0,1)");
  if (k < 0 || k > n) throw std::invalid_argument("expected_random_size: bad k");
  double below = 0, upto = 0;
  for (int i = 0; i <= k; ++i) {
    double c = binomial(n, i).convert_to<double>();
    if (i <= k - 1) below += c;
    upto += c;
  }
  double q = 1.0 - p;
  return std::ldexp(std::pow(q, below) - std::pow(q, upto), n);
}

RandomFamilyResult random_family(int n, int k, double p, std::uint64_t seed) {
  if (n < 1 || n > 24)
    throw std::invalid_argument("random_family capped at n <= 24");
  if (k < 0 || k > n) throw std::invalid_argument("random_family: bad k");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("random_family: p must be in (0,1)");

  const std::size_t count = std::size_t{1} << n;
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> in_sample(count, 0);
  std::vector<mask_t> sample;
  for (std::size_t x = 0; x < count; ++x)
    if (unit_real(rng) < p) {
      in_sample[x] = 1;
      sample.push_back(static_cast<mask_t>(x));
    }

  RandomFamilyResult result;
  result.sample_size = sample.size();
  if (sample.empty()) {
    result.family = Family(n, k);
    return result;
  }

  // Multi-source BFS distances to the sample.
  constexpr std::uint8_t unreached = 0xFF;
  std::vector<std::uint8_t> dist(count, unreached);
  std::deque<mask_t> queue;
  for (mask_t s : sample) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    mask_t x = queue.front();
    queue.pop_front();
    if (dist[x] >= k) continue;  // no need to go past distance k
    for (int i = 0; i < n; ++i) {
      mask_t y = x ^ (mask_t{1} << i);
      if (dist[y] == unreached) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }

  const double sphere = binomial(n, k).convert_to<double>();
  const bool scan_sample = static_cast<double>(sample.size()) <= sphere;

  std::vector<Subcube> members;
  for (std::size_t w = 0; w < count; ++w) {
    if (dist[w] != k) continue;
    mask_t anchor = 0;
    bool found = false;
    if (scan_sample) {
      for (mask_t s : sample)
        if (hamming_bits(static_cast<mask_t>(w), s) == k) {
          anchor = s;
          found = true;
          break;  // sample is ascending, first hit is smallest
        }
    } else {
      for_each_k_subset(full_mask(n), k, [&](mask_t delta) {
        mask_t s = static_cast<mask_t>(w) ^ delta;
        if (in_sample[s] && (!found || s < anchor)) {
          anchor = s;
          found = true;
        }
      });
    }
    if (!found) continue;  // unreachable: dist[w] == k guarantees a hit
    mask_t moving = static_cast<mask_t>(w) ^ anchor;
    members.emplace_back(n, moving, static_cast<mask_t>(w) & ~moving);
  }
  result.family = Family(n, k, std::move(members));
  return result;
}

namespace {

ExperimentStats experiment_impl(int n, int k, double p, std::uint64_t seed,
                                int trials, bool parallel) {
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  std::vector<std::uint64_t> sizes(trials, 0);
  std::vector<std::uint8_t> ok(trials, 1);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int t = 0; t < trials; ++t) {
    RandomFamilyResult r = random_family(n, k, p, seed + t);
    sizes[t] = r.family.size();
    ok[t] = is_irredundant_serial(r.family) ? 1 : 0;
  }
  ExperimentStats stats;
  stats.trials = trials;
  unsigned __int128 sum = 0, sumsq = 0;
  stats.min_size = sizes[0];
  stats.max_size = sizes[0];
  for (int t = 0; t < trials; ++t) {
    sum += sizes[t];
    sumsq += static_cast<unsigned __int128>(sizes[t]) * sizes[t];
    stats.min_size = std::min<std::size_t>(stats.min_size, sizes[t]);
    stats.max_size = std::max<std::size_t>(stats.max_size, sizes[t]);
    stats.all_irredundant = stats.all_irredundant && ok[t];
  }
  double mean = static_cast<double>(sum) / trials;
  stats.mean = mean;
  if (trials > 1) {
    double var =
        (static_cast<double>(sumsq) - static_cast<double>(sum) * mean) /
        (trials - 1);
    stats.stddev = std::sqrt(std::max(0.0, var));
    stats.std_error = stats.stddev / std::sqrt(static_cast<double>(trials));
  }
  stats.expected = expected_random_size(n, k, p);
  stats.z_score = stats.std_error > 0
                      ? (stats.mean - stats.expected) / stats.std_error
                      : 0.0;
  return stats;
}

}  // namespace

ExperimentStats run_experiment(int n, int k, double p, std::uint64_t seed,
                               int trials) {
  return experiment_impl(n, k, p, seed, trials, true);
}

ExperimentStats run_experiment_serial(int n, int k, double p,
                                      std::uint64_t seed, int trials) {
  return experiment_impl(n, k, p, seed, trials, false);
}

Family build(const ConstructionSpec& spec) {
  using Kind = ConstructionSpec::Kind;
  switch (spec.kind) {
    case Kind::principal:
      return principal(spec.n, spec.k, Vertex(spec.anchor, spec.n));
    case Kind::translates:
      return translates(spec.n, spec.moving);
    case Kind::from_code:
      if (!spec.code) throw std::invalid_argument("from_code needs a code");
      return from_code(spec.n, spec.k, *spec.code);
    case Kind::b_family:
      return b_family(spec.k);
    case Kind::e_extension:
      return e_extension(spec.k);
    case Kind::exceptional_5_3:
      return exceptional_5_3();
    case Kind::product_k1:
      return product_k1(spec.n);
    case Kind::random:
      return random_family(spec.n, spec.k, spec.p, spec.seed).family;
  }
  throw std::invalid_argument("unknown construction kind");
}

}  // namespace subcubes
