#pragma once

#include <optional>
#include <vector>

#include "subcubes/cube.hpp"

// Binary codes used by the code-based family constructions: Hamming codes,
// the binary Golay code, the two-word "trivial" code, plus min-distance,
// perfect-packing, and maximum-separated-set machinery.

namespace subcubes {

/// A set of codewords of {0,1}^n. `linear` marks codes generated here as
/// GF(2)-linear, which lets min_distance use the minimum nonzero weight.
struct Code {
  int n = 1;
  std::vector<mask_t> words;  // sorted, distinct
  std::optional<int> claimed_min_distance;
  bool linear = false;
};

/// Hamming code of length 2^s - 1 built from the parity-check matrix whose
/// columns are 1..2^s-1 in increasing order; 2^(n-s) words, distance 3,
/// perfect for radius 1. Requires 2 <= s <= 5.
Code hamming_code(int s);

/// The perfect [23,12,7] binary Golay code, generated by the cyclic shifts
/// of a fixed degree-11 generator polynomial. Verified at construction.
Code golay_code();

/// {all-zero, all-one} in {0,1}^n; distance n, perfect for k when n = 2k+1.
Code trivial_code(int n);

/// Exact minimum pairwise Hamming distance; needs at least 2 words.
/// Linear codes use the minimum nonzero codeword weight.
int min_distance(const Code& code);
/// Pairwise-scan reference kernels (used regardless of the linear flag).
int min_distance_pairwise_serial(const Code& code);
int min_distance_pairwise(const Code& code);

bool is_separated(const Code& code, int d);

/// True iff the radius-k balls around the codewords partition {0,1}^n.
/// Uses the exhaustive 2^n sweep when it fits in memory, otherwise the
/// equivalent algebraic criterion (distance >= 2k+1 plus exact counting).
bool is_perfect(const Code& code, int k);
bool is_perfect_sweep_serial(const Code& code, int k);
bool is_perfect_sweep(const Code& code, int k);
bool is_perfect_algebraic(const Code& code, int k);

struct SeparatedSetResult {
  int size = 0;
  std::vector<mask_t> witness;  // increasing; lexicographically smallest
};

/// Maximum size of a subset of {0,1}^n with pairwise distance >= d, by
/// branch and bound over vertices in numeric order (the all-zero vertex is
/// anchored into the set by translation invariance). Exact; n <= 12.
SeparatedSetResult max_separated_set(int n, int d);

Code code_from_vertices(const std::vector<Vertex>& vs);
std::vector<Vertex> code_vertices(const Code& code);

}  // namespace subcubes
