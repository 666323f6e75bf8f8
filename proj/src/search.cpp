#include "subcubes/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>

#include "subcubes/bounds.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

const char* universe_name(Universe u) {
  switch (u) {
    case Universe::all: return "all";
    case Universe::through_0_or_1: return "through01";
    case Universe::ball_private: return "ball";
  }
  return "?";
}

namespace {

mask_t next_combination(mask_t v) {
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
  mask_t last = full_mask(n) & ~full_mask(n - k);
  for (;;) {
    visit(m);
    if (m == last) break;
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

int distance_to_subcube(mask_t center, const Subcube& c) {
  return weight((center ^ c.values) & c.fixed_mask());
}

}  // namespace

std::vector<Subcube> all_subcubes(int n, int k, Universe universe,
                                  int ball_radius, mask_t ball_center) {
  if (n < 1 || n > 16)
    throw std::invalid_argument("all_subcubes capped at n <= 16");
  if (k < 0 || k > n) throw std::invalid_argument("all_subcubes: bad k");
  std::vector<Subcube> pool;
  switch (universe) {
    case Universe::all:
      for_each_moving_mask(n, k, [&](mask_t moving) {
        for_each_submask(full_mask(n) & ~moving, [&](mask_t values) {
          pool.emplace_back(n, moving, values);
        });
      });
      break;
    case Universe::through_0_or_1: {
      for_each_moving_mask(n, k, [&](mask_t moving) {
        pool.emplace_back(n, moving, 0);                       // through 0
        pool.emplace_back(n, moving, full_mask(n) & ~moving);  // through 1
      });
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
      break;
    }
    case Universe::ball_private: {
      int radius = ball_radius < 0 ? k : ball_radius;
      for_each_moving_mask(n, k, [&](mask_t moving) {
        for_each_submask(full_mask(n) & ~moving, [&](mask_t values) {
          Subcube c(n, moving, values);
          if (distance_to_subcube(ball_center, c) <= radius)
            pool.push_back(c);
        });
      });
      break;
    }
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

// Shared state of one branch-and-bound run. Everything except the atomics
// is immutable once the search starts.
struct SearchContext {
  int n = 0;
  int k = 0;
  std::vector<Subcube> pool;
  bool ball_mode = false;
  int ball_radius = 0;
  mask_t ball_center = 0;
  int global_cap = 0;  // combinatorial upper bound (floor)
  std::uint64_t node_budget = 0;

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::atomic<int> best{0};

  bool counts_private(mask_t v) const {
    return !ball_mode || hamming_bits(v, ball_center) <= ball_radius;
  }
  int orbit(int j) const { return weight(pool[j].values); }
  bool note_node() {
    std::uint64_t c = nodes.fetch_add(1, std::memory_order_relaxed);
    if (c >= node_budget) {
      aborted.store(true, std::memory_order_relaxed);
      return false;
    }
    return !aborted.load(std::memory_order_relaxed);
  }
};

// Which candidates one branch may use: the forced representative is never
// re-added, and ball branches skip orbits below their representative's.
struct BranchFilter {
  int rep = -1;
  int min_orbit = 0;
};

// Incremental coverage / private-vertex bookkeeping along one DFS path.
// Adding a subcube can only shrink private sets, so a member whose counted
// private set empties kills every extension of the current family.
class BranchState {
 public:
  explicit BranchState(const SearchContext* ctx)
      : ctx_(ctx),
        cov_(std::size_t{1} << ctx->n, 0),
        owner_(std::size_t{1} << ctx->n, -1),
        scratch_(ctx->pool.size() + 1, 0) {}

  int size() const { return static_cast<int>(chosen_.size()); }
  const std::vector<int>& chosen() const { return chosen_; }

  // Adds pool member ci; returns false when some member (including the new
  // one) is left without a counted private vertex. Caller pops either way.
  bool push(int ci) {
    int idx = size();
    int new_priv = 0;
    bool ok = true;
    for_each_vertex(ctx_->pool[ci], [&](mask_t v) {
      std::uint16_t& c = cov_[v];
      if (c == 0) {
        c = 1;
        owner_[v] = idx;
        if (ctx_->counts_private(v)) ++new_priv;
      } else if (c == 1) {
        c = 2;
        if (ctx_->counts_private(v) && --priv_[owner_[v]] == 0) ok = false;
      } else {
        ++c;
      }
    });
    chosen_.push_back(ci);
    priv_.push_back(new_priv);
    return ok && new_priv > 0;
  }

  void pop() {
    int ci = chosen_.back();
    for_each_vertex(ctx_->pool[ci], [&](mask_t v) {
      std::uint16_t& c = cov_[v];
      if (c == 1) {
        c = 0;
      } else if (c == 2) {
        c = 1;
        if (ctx_->counts_private(v)) ++priv_[owner_[v]];
      } else {
        --c;
      }
    });
    chosen_.pop_back();
    priv_.pop_back();
  }

  // Dry-run of push: would the family stay irredundant with pool[cj] added?
  bool addable(int cj) {
    bool new_priv = false;
    bool ok = true;
    touched_.clear();
    for_each_vertex(ctx_->pool[cj], [&](mask_t v) {
      std::uint16_t c = cov_[v];
      if (c == 0) {
        if (ctx_->counts_private(v)) new_priv = true;
      } else if (c == 1 && ctx_->counts_private(v)) {
        int o = owner_[v];
        if (scratch_[o]++ == 0) touched_.push_back(o);
        if (scratch_[o] >= priv_[o]) ok = false;
      }
    });
    for (int o : touched_) scratch_[o] = 0;
    return ok && new_priv;
  }

 private:
  const SearchContext* ctx_;
  std::vector<std::uint16_t> cov_;
  std::vector<int> owner_;
  std::vector<int> chosen_;
  std::vector<int> priv_;
  std::vector<int> scratch_;
  std::vector<int> touched_;
};

// Reusable per-depth scratch for addable-candidate lists. Pre-sized to the
// deepest possible recursion so references stay valid across nested calls.
using DepthBuffers = std::vector<std::vector<int>>;

DepthBuffers make_depth_buffers(std::size_t pool_size) {
  return DepthBuffers(pool_size + 2);
}

std::vector<int>& buffer(DepthBuffers& bufs, std::size_t depth) {
  return bufs[depth];
}

class Searcher {
 public:
  explicit Searcher(SearchContext& ctx) : ctx_(ctx) {}

  void dfs_max(BranchState& st, int start, const BranchFilter& filter,
               DepthBuffers& bufs) {
    if (!ctx_.note_node()) return;
    update_best(st);
    if (ctx_.best.load(std::memory_order_relaxed) >= ctx_.global_cap) return;

    std::vector<int>& addable = buffer(bufs, st.size());
    addable.clear();
    for (int j = start; j < static_cast<int>(ctx_.pool.size()); ++j)
      if (allowed(filter, j) && st.addable(j)) addable.push_back(j);

    const int avail = static_cast<int>(addable.size());
    for (int pos = 0; pos < avail; ++pos) {
      if (st.size() + avail - pos <= ctx_.best.load(std::memory_order_relaxed))
        break;
      int j = addable[pos];
      bool ok = st.push(j);
      if (ok) dfs_max(st, j + 1, filter, bufs);
      st.pop();
      if (ctx_.aborted.load(std::memory_order_relaxed)) return;
      if (ctx_.best.load(std::memory_order_relaxed) >= ctx_.global_cap) return;
    }
  }

  void dfs_enum(BranchState& st, int start, int target,
                const BranchFilter& filter, DepthBuffers& bufs,
                std::set<std::vector<std::string>>& classes) {
    if (!ctx_.note_node()) return;
    if (st.size() == target) {
      classes.insert(canonical_form(family_of(st.chosen())).words());
      return;
    }
    std::vector<int>& addable = buffer(bufs, st.size());
    addable.clear();
    for (int j = start; j < static_cast<int>(ctx_.pool.size()); ++j)
      if (allowed(filter, j) && st.addable(j)) addable.push_back(j);

    const int avail = static_cast<int>(addable.size());
    for (int pos = 0; pos < avail; ++pos) {
      if (st.size() + avail - pos < target) break;
      int j = addable[pos];
      bool ok = st.push(j);
      if (ok) dfs_enum(st, j + 1, target, filter, bufs, classes);
      st.pop();
      if (ctx_.aborted.load(std::memory_order_relaxed)) return;
    }
  }

  // First family of size `target` in candidate order; leaves it in `st`.
  bool dfs_lex(BranchState& st, int start, int target,
               const BranchFilter& filter, DepthBuffers& bufs) {
    if (!ctx_.note_node()) return false;
    if (st.size() == target) return true;
    std::vector<int>& addable = buffer(bufs, st.size());
    addable.clear();
    for (int j = start; j < static_cast<int>(ctx_.pool.size()); ++j)
      if (allowed(filter, j) && st.addable(j)) addable.push_back(j);

    const int avail = static_cast<int>(addable.size());
    for (int pos = 0; pos < avail; ++pos) {
      if (st.size() + avail - pos < target) return false;
      int j = addable[pos];
      bool ok = st.push(j);
      if (ok && dfs_lex(st, j + 1, target, filter, bufs)) return true;
      st.pop();
      if (ctx_.aborted.load(std::memory_order_relaxed)) return false;
    }
    return false;
  }

  Family family_of(const std::vector<int>& chosen) const {
    std::vector<Subcube> members;
    members.reserve(chosen.size());
    for (int i : chosen) members.push_back(ctx_.pool[i]);
    return Family(ctx_.n, ctx_.k, std::move(members));
  }

  void update_best(const BranchState& st) {
    int size = st.size();
    int cur = ctx_.best.load(std::memory_order_relaxed);
    while (size > cur && !ctx_.best.compare_exchange_weak(
                             cur, size, std::memory_order_relaxed)) {
    }
    if (size > best_witness_size_.load(std::memory_order_relaxed)) {
      std::lock_guard<std::mutex> lock(witness_mutex_);
      if (size > best_witness_size_.load(std::memory_order_relaxed)) {
        best_witness_ = st.chosen();
        best_witness_size_.store(size, std::memory_order_relaxed);
      }
    }
  }

  std::vector<int> best_witness() {
    std::lock_guard<std::mutex> lock(witness_mutex_);
    return best_witness_;
  }

 private:
  bool allowed(const BranchFilter& filter, int j) const {
    if (j == filter.rep) return false;
    return !ctx_.ball_mode || ctx_.orbit(j) >= filter.min_orbit;
  }

  SearchContext& ctx_;
  std::mutex witness_mutex_;
  std::vector<int> best_witness_;
  std::atomic<int> best_witness_size_{0};
};

int find_pool_index(const std::vector<Subcube>& pool, const Subcube& c) {
  auto it = std::lower_bound(pool.begin(), pool.end(), c);
  if (it == pool.end() || !(*it == c)) return -1;
  return static_cast<int>(it - pool.begin());
}

}  // namespace

SearchResult max_irredundant(const SearchProblem& problem) {
  const int n = problem.n;
  const int k = problem.k;
  int cap = problem.max_n > 0 ? problem.max_n
                              : (problem.universe == Universe::all ? 6 : 8);
  if (n < 1 || n > cap)
    throw std::invalid_argument("search: n exceeds the cap of " +
                                std::to_string(cap) +
                                " for this universe (override with max_n)");
  if (k < 0 || k > n) throw std::invalid_argument("search: bad k");

#ifdef _OPENMP
  int saved_threads = omp_get_max_threads();
  if (problem.threads > 0) omp_set_num_threads(problem.threads);
  struct ThreadGuard {
    int saved;
    ~ThreadGuard() { omp_set_num_threads(saved); }
  } thread_guard{saved_threads};
#endif

  const int radius = problem.ball_radius < 0 ? k : problem.ball_radius;
  const bool ball = problem.universe == Universe::ball_private;

  SearchContext ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.pool = all_subcubes(n, k, problem.universe, radius, problem.ball_center);
  ctx.ball_mode = ball;
  ctx.ball_radius = radius;
  ctx.ball_center = problem.ball_center;
  ctx.node_budget = problem.node_budget;
  ctx.global_cap = floor_rational(meshulam_upper(n, k)).convert_to<int>();

  SearchResult result;
  if (ctx.pool.empty()) {
    result.witness = Family(n, k);
    result.complete = true;
    return result;
  }

  // Root symmetry reduction. The isomorphism group acts transitively on the
  // `all` pool (translate a member to the all-zero vertex, then permute its
  // moving set into place), and the subgroup preserving the through-0/1
  // pool (permutations and the all-one translation) is transitive on that
  // pool, so a single representative subcube can be forced into the family.
  // For 0-centred ball universes each weight class |values| = w is one
  // orbit under coordinate permutations; branch w covers families whose
  // minimum weight class is w.
  std::vector<BranchFilter> branches;
  if (!ball) {
    int r = find_pool_index(ctx.pool, Subcube(n, full_mask(k), 0));
    branches.push_back({r, 0});
  } else if (problem.ball_center == 0) {
    for (int w = 0; w <= std::min(n - k, radius); ++w) {
      Subcube rep(n, full_mask(k), full_mask(k + w) & ~full_mask(k));
      int r = find_pool_index(ctx.pool, rep);
      if (r >= 0) branches.push_back({r, w});
    }
  } else {
    // General centre: no orbit structure assumed; force each candidate in
    // turn as the minimum chosen index instead.
    for (int j = 0; j < static_cast<int>(ctx.pool.size()); ++j)
      branches.push_back({-1, 0});
  }
  const bool generic_root = ball && problem.ball_center != 0;

  Searcher searcher(ctx);

  // Phase 1: the exact optimum. Seeds are explored independently; the
  // shared incumbent only tightens pruning, so the optimum (though not the
  // node count) is independent of scheduling.
  struct Seed {
    BranchFilter filter;
    int first;   // forced first member (rep, or the candidate itself)
    int second;  // second member, or -1 for the singleton
  };
  std::vector<Seed> seeds;
  {
    BranchState st(&ctx);
    for (std::size_t b = 0; b < branches.size(); ++b) {
      BranchFilter filter = branches[b];
      int first = generic_root ? static_cast<int>(b) : filter.rep;
      if (first < 0) continue;
      if (!st.push(first)) {  // a single subcube is always irredundant
        st.pop();
        continue;
      }
      searcher.update_best(st);
      int lo = generic_root ? first + 1 : 0;
      for (int j = lo; j < static_cast<int>(ctx.pool.size()); ++j)
        if (j != first && (generic_root || j != filter.rep) &&
            (!ball || ctx.orbit(j) >= filter.min_orbit) && st.addable(j))
          seeds.push_back({filter, first, j});
      st.pop();
    }
  }

#pragma omp parallel
  {
    BranchState st(&ctx);
    DepthBuffers bufs = make_depth_buffers(ctx.pool.size());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(seeds.size());
         ++s) {
      if (ctx.aborted.load(std::memory_order_relaxed)) continue;
      if (ctx.best.load(std::memory_order_relaxed) >= ctx.global_cap) continue;
      const Seed& seed = seeds[s];
      BranchFilter filter = seed.filter;
      if (generic_root) filter.rep = seed.first;  // never re-add the root
      st.push(seed.first);
      bool ok = st.push(seed.second);
      if (ok) searcher.dfs_max(st, seed.second + 1, filter, bufs);
      st.pop();
      st.pop();
    }
  }

  result.optimum = ctx.best.load();
  result.complete = !ctx.aborted.load();

  if (!result.complete) {
    // Budget ran out: report the best family seen (best effort).
    std::vector<int> chosen = searcher.best_witness();
    result.witness = searcher.family_of(chosen);
    result.node_count = ctx.nodes.load();
    return result;
  }

  if (problem.enumerate_extremal) {
    // Phase 2a: collect every extremal family reachable from each branch
    // and deduplicate by canonical form. Set union is order-independent.
    std::set<std::vector<std::string>> classes;
    const int target = result.optimum;
    if (target == 1) {
      for (std::size_t b = 0; b < branches.size(); ++b) {
        int first = generic_root ? static_cast<int>(b) : branches[b].rep;
        if (first >= 0)
          classes.insert(
              canonical_form(searcher.family_of({first})).words());
      }
    } else {
#pragma omp parallel
      {
        BranchState st(&ctx);
        DepthBuffers bufs = make_depth_buffers(ctx.pool.size());
        std::set<std::vector<std::string>> local;
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(seeds.size());
             ++s) {
          if (ctx.aborted.load(std::memory_order_relaxed)) continue;
          const Seed& seed = seeds[s];
          BranchFilter filter = seed.filter;
          if (generic_root) filter.rep = seed.first;
          st.push(seed.first);
          bool ok = st.push(seed.second);
          if (ok)
            searcher.dfs_enum(st, seed.second + 1, target, filter, bufs,
                              local);
          st.pop();
          st.pop();
        }
#pragma omp critical(subcubes_enum_merge)
        classes.merge(local);
      }
    }
    result.complete = !ctx.aborted.load();
    for (const auto& words : classes)
      result.extremal_classes.push_back(Family::from_words(words));
    if (!result.extremal_classes.empty())
      result.witness = result.extremal_classes.front();
    result.node_count = ctx.nodes.load();
    return result;
  }

  // Phase 2b: deterministic witness — the first extremal family in
  // candidate order within the first branch that attains the optimum.
  for (std::size_t b = 0; b < branches.size(); ++b) {
    BranchFilter filter = branches[b];
    int first = generic_root ? static_cast<int>(b) : filter.rep;
    if (first < 0) continue;
    if (generic_root) filter.rep = first;
    BranchState st(&ctx);
    DepthBuffers bufs = make_depth_buffers(ctx.pool.size());
    if (!st.push(first)) {
      st.pop();
      continue;
    }
    int start = generic_root ? first + 1 : 0;
    if (result.optimum == 1 ||
        searcher.dfs_lex(st, start, result.optimum, filter, bufs)) {
      if (st.size() == result.optimum) {
        std::vector<int> chosen = st.chosen();
        std::sort(chosen.begin(), chosen.end());
        result.witness = searcher.family_of(chosen);
        break;
      }
    }
  }
  if (static_cast<int>(result.witness.size()) != result.optimum)
    result.witness = searcher.family_of(searcher.best_witness());
  result.complete = !ctx.aborted.load();
  result.node_count = ctx.nodes.load();
  return result;
}

std::vector<Family> enumerate_extremal(SearchProblem problem) {
  problem.enumerate_extremal = true;
  return max_irredundant(problem).extremal_classes;
}

SearchResult restricted_max_through_01(int n, int k) {
  SearchProblem p;
  p.n = n;
  p.k = k;
  p.universe = Universe::through_0_or_1;
  return max_irredundant(p);
}

SearchResult ball_private_max(int n, int k) {
  SearchProblem p;
  p.n = n;
  p.k = k;
  p.universe = Universe::ball_private;
  return max_irredundant(p);
}

}  // namespace subcubes
