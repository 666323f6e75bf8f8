#pragma once

#include <cstdint>
#include <vector>

#include "subcubes/cube.hpp"

// Exact maximum irredundant families by depth-first branch and bound over
// the hereditary system of irredundant families. Subfamilies of irredundant
// families are irredundant, so extending in candidate order with
// private-vertex bookkeeping explores every feasible set once; pruning uses
// the count of still-addable candidates, the combinatorial upper bound, and
// symmetry reduction on the first chosen subcube.

namespace subcubes {

enum class Universe {
  all,             // every k-subcube
  through_0_or_1,  // subcubes through the all-zero or the all-one vertex
  ball_private,    // any subcube, but private vertices must lie in a ball
};

const char* universe_name(Universe u);

struct SearchProblem {
  int n = 1;
  int k = 0;
  Universe universe = Universe::all;
  // ball_private parameters; radius < 0 means radius = k.
  int ball_radius = -1;
  mask_t ball_center = 0;
  bool enumerate_extremal = false;
  std::uint64_t node_budget = 1'000'000'000;
  // 0 = per-universe default (6 for `all`, 8 for restricted universes).
  int max_n = 0;
  int threads = 0;  // 0 = library default
};

struct SearchResult {
  int optimum = 0;
  Family witness;
  std::uint64_t node_count = 0;
  bool complete = false;
  std::vector<Family> extremal_classes;  // canonical, sorted; enumerate mode

  SearchResult() : witness(1, 0) {}
};

/// Candidate pool in a fixed (moving, values)-ascending order.
std::vector<Subcube> all_subcubes(int n, int k, Universe universe = Universe::all,
                                  int ball_radius = -1, mask_t ball_center = 0);

/// Exact maximum (and optionally all extremal classes) for the problem.
/// On budget exhaustion returns the best family found with complete=false.
SearchResult max_irredundant(const SearchProblem& problem);

/// Convenience wrapper running max_irredundant in enumerate mode.
std::vector<Family> enumerate_extremal(SearchProblem problem);

/// Maximum over families whose members all contain the all-zero or the
/// all-one vertex.
SearchResult restricted_max_through_01(int n, int k);

/// Maximum over families admitting a private assignment inside the
/// radius-k ball around the all-zero vertex.
SearchResult ball_private_max(int n, int k);

/// Minimum of the serialized family over all coordinate permutations and
/// XOR translations; idempotent, equal exactly on isomorphic families.
/// Capped at n <= 8 (group size n! * 2^n).
Family canonical_form(const Family& f);

}  // namespace subcubes
