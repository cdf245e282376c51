#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "pop/extension.hpp"
#include "pop/poset.hpp"

namespace pop {

// Answers "is t_i <= t_j?" against a hidden total order (a permutation of
// ranks) and counts distinct pairs asked. Repeats are answered from the memo
// table for free, so the count matches the decision-tree cost model.
class ComparisonOracle {
 public:
  explicit ComparisonOracle(std::vector<int> hidden_ranks, bool memoize = true);
  static ComparisonOracle from_seed(int n, std::uint64_t seed, bool memoize = true);

  bool less_eq(int i, int j);

  int size() const { return static_cast<int>(rank_.size()); }
  std::int64_t count() const { return count_; }
  std::int64_t memo_hits() const { return memo_hits_; }
  const std::vector<int>& hidden_ranks() const { return rank_; }

 private:
  std::vector<int> rank_;
  std::unordered_set<std::uint64_t> asked_;
  std::int64_t count_ = 0;
  std::int64_t memo_hits_ = 0;
  bool memoize_ = true;
};

enum class PivotMode { seeded_random, median_of_medians };

inline constexpr std::uint64_t kDefaultPivotSeed = 0x9e3779b97f4a7c15ull;

// Rank-pruned quickselect. Partitions the working array around pivots and
// recurses only into subranges that still contain a requested cut, so ranges
// between adjacent cuts are separated but never sorted. Random pivots are
// derived from (seed, subrange), which makes runs reproducible and makes the
// asked-pair set monotone in the cut set.
struct MultiselectResult {
  std::vector<int> arrangement;  // T-indices; every cut position is realized
  std::vector<int> cuts;

  std::vector<std::vector<int>> blocks() const;
};

MultiselectResult multiselect(ComparisonOracle& oracle, std::vector<int> ranks,
                              PivotMode mode = PivotMode::seeded_random,
                              std::uint64_t seed = kDefaultPivotSeed);

struct Production {
  std::vector<int> pi;  // poset element i is realized by t_{pi[i]}
  std::int64_t comparisons = 0;
};

// Ordering phase: multiselect at the cut ranks of the precomputed weak order,
// then assign each block to its layer (both in ascending index order).
Production produce(const GreedyExtension& ext, ComparisonOracle& oracle,
                   PivotMode mode = PivotMode::seeded_random,
                   std::uint64_t seed = kDefaultPivotSeed);

// Convenience: preprocess and order in one call.
Production produce(const Poset& p, ComparisonOracle& oracle,
                   PivotMode mode = PivotMode::seeded_random,
                   std::uint64_t seed = kDefaultPivotSeed);

// Checks s_i <= s_j implies t_{pi(i)} <= t_{pi(j)} for all pairs.
bool verify_production(const Poset& p, const std::vector<int>& hidden_ranks,
                       const std::vector<int>& pi);

}  // namespace pop
