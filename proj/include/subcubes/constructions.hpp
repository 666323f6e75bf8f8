#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "subcubes/codes.hpp"
#include "subcubes/cube.hpp"

// Explicit irredundant-family constructions. Every function returns a
// Family whose irredundance can be checked with is_irredundant; the size
// identities are exercised in the tests.

namespace subcubes {

/// All C(n,k) k-subcubes through v.
Family principal(int n, int k, const Vertex& v);

/// All 2^(n-k) translates of the subcube with the given moving set; they
/// partition the cube.
Family translates(int n, mask_t moving);

/// Union of the principal families of all codewords. Requires code length n
/// and min distance >= 2k+1 so the principal families are disjoint.
Family from_code(int n, int k, const Code& code);

/// In {0,1}^(2k): the k-subcubes through the all-zero vertex whose moving
/// set contains coordinate 0, plus those through the all-one vertex whose
/// moving set contains coordinate n-1. Size C(2k,k).
Family b_family(int k);

/// The k-subcubes with coordinate 0 fixed to 0, coordinate n-1 fixed to 1,
/// coordinate 1 moving, and the other k-1 moving coordinates among
/// {2,...,n-2} (remaining coordinates fixed to 0). Size C(2k-3,k-1);
/// extends b_family(k) keeping the union irredundant. Requires k >= 2.
Family e_extension(int k);

/// The ten 3-subcubes of {0,1}^5 forming the non-principal extremal family,
/// five through the all-zero vertex and five through the all-one vertex.
Family exceptional_5_3();
/// The unique private vertex of each member, aligned with member order.
std::array<mask_t, 10> exceptional_5_3_private_vertices();

/// k=1 lower-bound construction: a Hamming-code edge family on the first
/// m = 2^s - 1 coordinates (s maximal with m <= n) replicated across the
/// 2^(n-m) assignments of the remaining coordinates. Size (m/(m+1)) * 2^n.
Family product_k1(int n);

/// p maximizing the expected size of the random construction:
/// (1-p)^{sum_{i<=k} C(n,i)} = (1-beta)^{1/beta}.
double optimal_p(int n, int k);

/// Expected size 2^n (t^(1-beta) - t) with t = (1-p)^{sum_{i<=k} C(n,i)}.
double expected_random_size(int n, int k, double p);

struct RandomFamilyResult {
  Family family;
  std::size_t sample_size = 0;  // |S|, the sampled vertex set
  RandomFamilyResult() : family(1, 0) {}
};

/// Samples S with density p (seeded, reproducible), takes W = vertices at
/// distance exactly k from S, and spans a k-subcube from each w in W to the
/// numerically smallest codeword at distance k. Always irredundant: w is a
/// private vertex of its subcube. n <= 24.
RandomFamilyResult random_family(int n, int k, double p, std::uint64_t seed);

struct ExperimentStats {
  int trials = 0;
  double mean = 0;
  double stddev = 0;
  double std_error = 0;
  double expected = 0;
  double z_score = 0;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  bool all_irredundant = true;
};

/// Repeats random_family with per-trial seeds (seed + trial index), checks
/// every sample for irredundance, and compares the mean against the exact
/// expectation. Deterministic for fixed inputs regardless of threading.
ExperimentStats run_experiment(int n, int k, double p, std::uint64_t seed,
                               int trials);
ExperimentStats run_experiment_serial(int n, int k, double p,
                                      std::uint64_t seed, int trials);

/// Parameters for a construction chosen by name (CLI dispatch).
struct ConstructionSpec {
  enum class Kind {
    principal,
    translates,
    from_code,
    b_family,
    e_extension,
    exceptional_5_3,
    product_k1,
    random,
  };
  Kind kind = Kind::principal;
  int n = 0;
  int k = 0;
  mask_t anchor = 0;
  mask_t moving = 0;
  std::optional<Code> code;
  double p = 0.5;
  std::uint64_t seed = 1;
};

Family build(const ConstructionSpec& spec);

}  // namespace subcubes
