#include "subcubes/cube.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

namespace {

void check_dim(int n) {
  if (n < 1 || n > max_dim)
    throw std::invalid_argument("dimension n must be in [1, 32], got " +
                                std::to_string(n));
}

}  // namespace

Vertex::Vertex(mask_t bits_, int n_in) : bits(bits_), n(n_in) {
  check_dim(n);
  if (bits & ~full_mask(n))
    throw std::invalid_argument("vertex has bits outside dimension " +
                                std::to_string(n));
}

int hamming(const Vertex& x, const Vertex& y) {
  if (x.n != y.n) throw std::invalid_argument("hamming: dimension mismatch");
  return hamming_bits(x.bits, y.bits);
}

Subcube::Subcube(int n_in, mask_t moving_, mask_t values_)
    : n(n_in), moving(moving_), values(values_) {
  check_dim(n);
  if ((moving | values) & ~full_mask(n))
    throw std::invalid_argument("subcube masks exceed dimension " +
                                std::to_string(n));
  if (moving & values)
    throw std::invalid_argument("subcube fixes a value on a moving coordinate");
}

Subcube parse_subcube(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("empty subcube word");
  if (word.size() > static_cast<std::size_t>(max_dim))
    throw std::invalid_argument("subcube word longer than 32 characters");
  mask_t moving = 0, values = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    switch (word[i]) {
      case '*': moving |= mask_t{1} << i; break;
      case '1': values |= mask_t{1} << i; break;
      case '0': break;
      default:
        throw std::invalid_argument(std::string("invalid character '") +
                                    word[i] + "' in subcube word");
    }
  }
  return Subcube(static_cast<int>(word.size()), moving, values);
}

std::string to_word(const Subcube& c) {
  std::string w(static_cast<std::size_t>(c.n), '0');
  for (int i = 0; i < c.n; ++i) {
    mask_t bit = mask_t{1} << i;
    if (c.moving & bit)
      w[i] = '*';
    else if (c.values & bit)
      w[i] = '1';
  }
  return w;
}

Vertex parse_vertex(std::string_view word) {
  Subcube c = parse_subcube(word);
  if (c.moving)
    throw std::invalid_argument("vertex word must not contain '*'");
  return Vertex(c.values, c.n);
}

std::string to_word(const Vertex& v) {
  return to_word(Subcube(v.n, 0, v.bits));
}

bool contains(const Subcube& c, const Vertex& x) {
  if (c.n != x.n) throw std::invalid_argument("contains: dimension mismatch");
  return c.contains_bits(x.bits);
}

int chi_eval(const Subcube& c, const Vertex& x) {
  if (c.n != x.n) throw std::invalid_argument("chi_eval: dimension mismatch");
  mask_t fixed = c.fixed_mask();
  mask_t zeros = fixed & ~c.values;  // 0(C)
  mask_t ones = fixed & c.values;    // 1(C)
  int prod = 1;
  for (int i = 0; i < c.n; ++i) {
    mask_t bit = mask_t{1} << i;
    int xi = (x.bits & bit) ? 1 : 0;
    if (zeros & bit) prod *= 1 - xi;
    if (ones & bit) prod *= xi;
  }
  return prod;
}

Family::Family(int n, int k) : n_(n), k_(k) {
  check_dim(n);
  if (k < 0 || k > n)
    throw std::invalid_argument("family dimension k out of range");
}

Family::Family(int n, int k, std::vector<Subcube> members)
    : Family(n, k) {
  members_ = std::move(members);
  for (const Subcube& c : members_) {
    if (c.n != n_ || c.dim() != k_)
      throw std::invalid_argument("family member has wrong dimensions: " +
                                  to_word(c));
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(members_.size());
  for (const Subcube& c : members_)
    keys.push_back((std::uint64_t{c.moving} << 32) | c.values);
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw std::invalid_argument("family contains duplicate members");
}

Family Family::from_words(const std::vector<std::string>& words) {
  if (words.empty())
    throw std::invalid_argument("cannot infer dimensions from an empty list");
  std::vector<Subcube> members;
  members.reserve(words.size());
  for (const std::string& w : words) members.push_back(parse_subcube(w));
  int n = members.front().n;
  int k = members.front().dim();
  return Family(n, k, std::move(members));
}

void Family::add(const Subcube& c) {
  if (c.n != n_ || c.dim() != k_)
    throw std::invalid_argument("family member has wrong dimensions: " +
                                to_word(c));
  if (contains_member(c))
    throw std::invalid_argument("duplicate family member: " + to_word(c));
  members_.push_back(c);
}

bool Family::contains_member(const Subcube& c) const {
  return std::find(members_.begin(), members_.end(), c) != members_.end();
}

std::vector<std::string> Family::words() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const Subcube& c : members_) out.push_back(to_word(c));
  return out;
}

Family family_union(const Family& a, const Family& b) {
  if (a.n() != b.n() || a.k() != b.k())
    throw std::invalid_argument("family_union: dimension mismatch");
  std::vector<Subcube> members = a.members();
  members.insert(members.end(), b.members().begin(), b.members().end());
  return Family(a.n(), a.k(), std::move(members));
}

std::uint64_t CoverageCounts::total() const {
  std::uint64_t t = 0;
  if (!dense_.empty()) {
    for (std::uint32_t c : dense_) t += c;
  } else {
    for (const auto& [v, c] : sparse_) t += c;
  }
  return t;
}

std::uint64_t CoverageCounts::covered() const {
  std::uint64_t t = 0;
  if (!dense_.empty()) {
    for (std::uint32_t c : dense_) t += c > 0;
  } else {
    t = sparse_.size();
  }
  return t;
}

CoverageCounts coverage_counts_serial(const Family& f, int dense_budget_log2) {
  CoverageCounts out;
  out.n_ = f.n();
  if (f.n() <= dense_budget_log2) {
    out.dense_.assign(std::size_t{1} << f.n(), 0);
    for (const Subcube& c : f.members())
      for_each_vertex(c, [&](mask_t v) { ++out.dense_[v]; });
  } else {
    for (const Subcube& c : f.members())
      for_each_vertex(c, [&](mask_t v) { ++out.sparse_[v]; });
  }
  return out;
}

CoverageCounts coverage_counts(const Family& f, int dense_budget_log2) {
  CoverageCounts out;
  out.n_ = f.n();
  if (f.n() > dense_budget_log2) {
    // Sparse fallback stays serial; only reachable for n > 24 by default.
    return coverage_counts_serial(f, dense_budget_log2);
  }
  out.dense_.assign(std::size_t{1} << f.n(), 0);
  auto* counts = out.dense_.data();
  const auto& members = f.members();
  const std::int64_t m = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    for_each_vertex(members[i], [&](mask_t v) {
      std::atomic_ref<std::uint32_t> cell(counts[v]);
      cell.fetch_add(1, std::memory_order_relaxed);
    });
  }
  return out;
}

std::vector<mask_t> private_vertices(const Family& f, std::size_t member) {
  if (member >= f.size())
    throw std::out_of_range("private_vertices: member index out of range");
  CoverageCounts cov = coverage_counts(f);
  std::vector<mask_t> out;
  for_each_vertex(f[member], [&](mask_t v) {
    if (cov.count(v) == 1) out.push_back(v);
  });
  return out;
}

std::vector<std::vector<mask_t>> all_private_vertices(const Family& f) {
  CoverageCounts cov = coverage_counts(f);
  std::vector<std::vector<mask_t>> out(f.size());
  const std::int64_t m = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    for_each_vertex(f[i], [&](mask_t v) {
      if (cov.count(v) == 1) out[i].push_back(v);
    });
  }
  return out;
}

namespace {

bool irredundant_with(const Family& f, const CoverageCounts& cov) {
  const std::int64_t m = static_cast<std::int64_t>(f.size());
  std::atomic<bool> ok{true};
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    if (!ok.load(std::memory_order_relaxed)) continue;
    bool has_private = false;
    for_each_vertex(f[i], [&](mask_t v) {
      if (cov.count(v) == 1) has_private = true;
    });
    if (!has_private) ok.store(false, std::memory_order_relaxed);
  }
  return ok.load();
}

}  // namespace

bool is_irredundant(const Family& f) {
  if (f.empty()) return true;
  return irredundant_with(f, coverage_counts(f));
}

bool is_irredundant_serial(const Family& f) {
  if (f.empty()) return true;
  CoverageCounts cov = coverage_counts_serial(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool has_private = false;
    for_each_vertex(f[i], [&](mask_t v) {
      if (cov.count(v) == 1) has_private = true;
    });
    if (!has_private) return false;
  }
  return true;
}

namespace {

mask_t next_combination(mask_t v) {
  // Gosper's hack: next mask with the same popcount.
  mask_t u = v & -v;
  mask_t w = v + u;
  return w | (((v ^ w) >> 2) / u);
}

template <typename F>
void for_each_moving_mask(int n, int k, F&& visit) {
  if (k == 0) {
    visit(mask_t{0});
    return;
  }
  mask_t m = full_mask(k);
  mask_t limit = full_mask(n);
  while (m <= limit) {
    visit(m);
    if (m == (limit & ~full_mask(n - k))) break;  // highest k bits: last one
    m = next_combination(m);
  }
}

template <typename F>
void for_each_submask(mask_t set, F&& visit) {
  mask_t sub = 0;
  for (;;) {
    visit(sub);
    if (sub == set) break;
    sub = (sub - set) & set;
  }
}

}  // namespace

bool is_maximal_irredundant(const Family& f, int enumeration_cap) {
  if (f.n() > enumeration_cap)
    throw std::invalid_argument(
        "is_maximal_irredundant: n exceeds enumeration cap");
  CoverageCounts cov = coverage_counts(f);
  if (!f.empty() && !irredundant_with(f, cov))
    throw std::invalid_argument("is_maximal_irredundant: family not irredundant");
  std::vector<std::vector<mask_t>> privates = all_private_vertices(f);

  std::unordered_set<std::uint64_t> present;
  for (const Subcube& c : f.members())
    present.insert((std::uint64_t{c.moving} << 32) | c.values);

  bool extension_found = false;
  for_each_moving_mask(f.n(), f.k(), [&](mask_t moving) {
    if (extension_found) return;
    mask_t fixed = full_mask(f.n()) & ~moving;
    for_each_submask(fixed, [&](mask_t values) {
      if (extension_found) return;
      if (present.count((std::uint64_t{moving} << 32) | values)) return;
      Subcube d(f.n(), moving, values);
      // d is addable iff d has an uncovered vertex and no member's whole
      // private set lies inside d.
      bool d_private = false;
      for_each_vertex(d, [&](mask_t v) {
        if (cov.count(v) == 0) d_private = true;
      });
      if (!d_private) return;
      for (const auto& pv : privates) {
        bool survives = false;
        for (mask_t v : pv)
          if (!d.contains_bits(v)) {
            survives = true;
            break;
          }
        if (!survives) return;  // adding d would kill this member
      }
      extension_found = true;
    });
  });
  return !extension_found;
}

Family project(const Family& f, int coord) {
  if (coord < 0 || coord >= f.n())
    throw std::invalid_argument("project: coordinate out of range");
  if (f.n() < 2) throw std::invalid_argument("project: n must be at least 2");
  if (f.k() < 1)
    throw std::invalid_argument("project: members have no moving coordinates");
  mask_t bit = mask_t{1} << coord;
  for (const Subcube& c : f.members())
    if (!(c.moving & bit))
      throw std::invalid_argument("project: member fixes coordinate " +
                                  std::to_string(coord) + ": " + to_word(c));
  mask_t low = bit - 1;
  auto drop = [&](mask_t m) {
    return (m & low) | ((m >> (coord + 1)) << coord);
  };
  std::vector<Subcube> members;
  members.reserve(f.size());
  for (const Subcube& c : f.members())
    members.emplace_back(f.n() - 1, drop(c.moving), drop(c.values));
  return Family(f.n() - 1, f.k() - 1, std::move(members));
}

Subcube translated(const Subcube& c, mask_t t) {
  return Subcube(c.n, c.moving, (c.values ^ t) & c.fixed_mask());
}

mask_t apply_permutation(mask_t m, const std::vector<int>& sigma) {
  mask_t out = 0;
  while (m) {
    int i = std::countr_zero(m);
    out |= mask_t{1} << sigma[i];
    m &= m - 1;
  }
  return out;
}

Subcube permuted(const Subcube& c, const std::vector<int>& sigma) {
  return Subcube(c.n, apply_permutation(c.moving, sigma),
                 apply_permutation(c.values, sigma));
}

Family translate(const Family& f, const Vertex& x) {
  if (x.n != f.n()) throw std::invalid_argument("translate: dimension mismatch");
  std::vector<Subcube> members;
  members.reserve(f.size());
  for (const Subcube& c : f.members()) members.push_back(translated(c, x.bits));
  return Family(f.n(), f.k(), std::move(members));
}

Family permute(const Family& f, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != f.n())
    throw std::invalid_argument("permute: permutation size mismatch");
  mask_t seen = 0;
  for (int s : sigma) {
    if (s < 0 || s >= f.n() || (seen & (mask_t{1} << s)))
      throw std::invalid_argument("permute: not a permutation of coordinates");
    seen |= mask_t{1} << s;
  }
  std::vector<Subcube> members;
  members.reserve(f.size());
  for (const Subcube& c : f.members()) members.push_back(permuted(c, sigma));
  return Family(f.n(), f.k(), std::move(members));
}

}  // namespace subcubes
