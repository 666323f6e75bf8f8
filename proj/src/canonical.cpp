#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "subcubes/search.hpp"

namespace subcubes {

namespace {

using Key = std::uint64_t;

inline Key subcube_key(mask_t moving, mask_t values) {
  return (Key{moving} << 32) | values;
}

}  // namespace

Family canonical_form(const Family& f) {
  const int n = f.n();
  if (n > 8)
    throw std::invalid_argument("canonical_form capped at n <= 8");
  if (f.empty()) return f;

  const mask_t all = full_mask(n);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);

  std::vector<Key> best;
  std::vector<Key> current(f.size());
  std::vector<mask_t> ptab(std::size_t{1} << n);

  do {
    // Permuted image of every n-bit mask, built incrementally.
    ptab[0] = 0;
    for (mask_t m = 1; m <= all; ++m) {
      int low = std::countr_zero(m);
      ptab[m] = ptab[m & (m - 1)] | (mask_t{1} << sigma[low]);
    }
    for (mask_t t = 0; t <= all; ++t) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        mask_t moving = ptab[f[i].moving];
        mask_t values = (ptab[f[i].values] ^ t) & all & ~moving;
        current[i] = subcube_key(moving, values);
      }
      std::sort(current.begin(), current.end());
      if (best.empty() || current < best) best = current;
      if (t == all) break;  // avoid wrap at n == 32 (unreachable, n <= 8)
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<Subcube> members;
  members.reserve(best.size());
  for (Key key : best)
    members.emplace_back(n, static_cast<mask_t>(key >> 32),
                         static_cast<mask_t>(key & 0xFFFFFFFFu));
  return Family(n, f.k(), std::move(members));
}

}  // namespace subcubes
