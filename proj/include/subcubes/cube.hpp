#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Core types for subcube families of the discrete cube {0,1}^n.
//
// Conventions used throughout:
//   * coordinates are 0-based bit positions of a 32-bit mask,
//   * in the textual form (words over {0,1,*}) the leftmost character is
//     coordinate 0, so "***01" fixes coordinate 3 to 0 and coordinate 4 to 1,
//   * n is capped at 32 so every vertex and coordinate set is one mask.

namespace subcubes {

inline constexpr int max_dim = 32;

using mask_t = std::uint32_t;

constexpr mask_t full_mask(int n) {
  return n >= 32 ? ~mask_t{0} : (mask_t{1} << n) - 1;
}

constexpr int weight(mask_t m) { return std::popcount(m); }

constexpr int hamming_bits(mask_t x, mask_t y) { return std::popcount(x ^ y); }

/// A vertex of {0,1}^n stored as an n-bit mask.
struct Vertex {
  mask_t bits = 0;
  int n = 1;

  Vertex() = default;
  Vertex(mask_t bits, int n);

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Hamming distance |x ^ y|; throws std::invalid_argument on mismatched n.
int hamming(const Vertex& x, const Vertex& y);

/// A subcube of {0,1}^n: `moving` marks the free coordinates, `values` the
/// fixed coordinates set to 1 (fixed coordinates outside `values` are 0).
/// Invariant: moving & values == 0 and both fit in n bits.
struct Subcube {
  int n = 1;
  mask_t moving = 0;
  mask_t values = 0;

  Subcube() = default;
  Subcube(int n, mask_t moving, mask_t values);

  int dim() const { return weight(moving); }
  mask_t fixed_mask() const { return full_mask(n) & ~moving; }
  /// Minimum vertex of the subcube viewed as an interval in the subset order.
  mask_t start_vertex() const { return values; }
  /// Maximum vertex of the interval.
  mask_t end_vertex() const { return values | moving; }

  bool contains_bits(mask_t x) const {
    return ((x ^ values) & fixed_mask()) == 0;
  }

  friend bool operator==(const Subcube&, const Subcube&) = default;
  friend auto operator<=>(const Subcube&, const Subcube&) = default;
};

/// Parses a word over {0,1,*}; position i of the word is coordinate i.
/// Throws std::invalid_argument on bad characters or length.
Subcube parse_subcube(std::string_view word);
std::string to_word(const Subcube& c);

/// Vertex words are subcube words without '*'.
Vertex parse_vertex(std::string_view word);
std::string to_word(const Vertex& v);

/// Membership test; throws on dimension mismatch.
bool contains(const Subcube& c, const Vertex& x);

/// The characteristic polynomial of c evaluated at a 0/1 point:
/// prod over fixed-0 coordinates of (1-x_i) times prod over fixed-1 of x_i.
/// Agrees with contains() on every vertex.
int chi_eval(const Subcube& c, const Vertex& x);

/// Visits the 2^dim vertices of c in increasing mask order.
template <typename F>
void for_each_vertex(const Subcube& c, F&& visit) {
  mask_t sub = 0;
  for (;;) {
    visit(static_cast<mask_t>(c.values | sub));
    if (sub == c.moving) break;
    sub = (sub - c.moving) & c.moving;
  }
}

/// An ordered list of distinct subcubes of equal dimension k in {0,1}^n.
class Family {
 public:
  Family(int n, int k);
  Family(int n, int k, std::vector<Subcube> members);

  /// Builds a family from words; n and k are inferred and must be uniform.
  static Family from_words(const std::vector<std::string>& words);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Subcube>& members() const { return members_; }
  const Subcube& operator[](std::size_t i) const { return members_[i]; }

  /// Appends a member; throws on dimension mismatch or duplicate.
  void add(const Subcube& c);

  bool contains_member(const Subcube& c) const;

  std::vector<std::string> words() const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  int n_;
  int k_;
  std::vector<Subcube> members_;
};

/// Union of two families over the same (n, k); duplicates rejected.
Family family_union(const Family& a, const Family& b);

/// How many members cover each vertex. Backed by a dense array when
/// 2^n <= 2^dense_budget_log2, otherwise by a hash map; results identical.
class CoverageCounts {
 public:
  std::uint32_t count(mask_t x) const {
    if (!dense_.empty()) return dense_[x];
    auto it = sparse_.find(x);
    return it == sparse_.end() ? 0 : it->second;
  }
  bool dense() const { return !dense_.empty(); }
  /// Sum of all counts (= |F| * 2^k).
  std::uint64_t total() const;
  /// Number of vertices with count > 0.
  std::uint64_t covered() const;

 private:
  friend CoverageCounts coverage_counts_serial(const Family&, int);
  friend CoverageCounts coverage_counts(const Family&, int);
  int n_ = 0;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<mask_t, std::uint32_t> sparse_;
};

inline constexpr int default_dense_budget_log2 = 24;

/// Serial reference kernel.
CoverageCounts coverage_counts_serial(const Family& f,
                                      int dense_budget_log2 = default_dense_budget_log2);
/// OpenMP kernel (dense path parallel); same results as the serial kernel.
CoverageCounts coverage_counts(const Family& f,
                               int dense_budget_log2 = default_dense_budget_log2);

/// Vertices of member i covered by no other member, in increasing order.
std::vector<mask_t> private_vertices(const Family& f, std::size_t member);
/// Private vertex lists for all members from a single coverage pass.
std::vector<std::vector<mask_t>> all_private_vertices(const Family& f);

/// True iff every member has a private vertex (vacuously true when empty).
bool is_irredundant(const Family& f);
bool is_irredundant_serial(const Family& f);

/// True iff no k-subcube outside f can be added keeping f irredundant.
/// Enumerates all C(n,k)*2^(n-k) candidates; throws when f is not
/// irredundant or n exceeds the enumeration cap.
bool is_maximal_irredundant(const Family& f, int enumeration_cap = 20);

/// Deletes coordinate `coord` (0-based); every member must move it.
Family project(const Family& f, int coord);

/// Member-wise XOR translation; preserves irredundance and private counts.
Family translate(const Family& f, const Vertex& x);

/// Coordinate relabeling: bit i goes to bit sigma[i]; sigma must be a
/// permutation of {0,...,n-1}.
Family permute(const Family& f, const std::vector<int>& sigma);

mask_t apply_permutation(mask_t m, const std::vector<int>& sigma);
Subcube translated(const Subcube& c, mask_t t);
Subcube permuted(const Subcube& c, const std::vector<int>& sigma);

}  // namespace subcubes
