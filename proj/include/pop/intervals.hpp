#pragma once

#include <cstdint>
#include <vector>

#include "pop/entropy.hpp"
#include "pop/poset.hpp"

namespace pop {

// Closed integer intervals. Two elements are incomparable exactly when their
// intervals share a point; v precedes w when hi[v] < lo[w]. Antichains of the
// induced interval order are therefore sets of pairwise intersecting
// intervals, which always share a common stabbing point.
struct IntervalSet {
  std::vector<std::int64_t> lo, hi;

  int size() const { return static_cast<int>(lo.size()); }
  bool intersects(int a, int b) const { return lo[a] <= hi[b] && lo[b] <= hi[a]; }
  bool before(int a, int b) const { return hi[a] < lo[b]; }

  // Exact translation into the endpoint convention of IntervalOrder, whose
  // comparison is non-strict: [l, r] maps to [2l, 2r+1], so touching closed
  // intervals stay incomparable while separated ones become related.
  IntervalOrder to_interval_order() const;
};

// Greedy decomposition into maximum antichains: repeatedly removes the set of
// intervals covering a deepest point (leftmost such point, for determinism).
std::vector<std::vector<int>> greedy_interval_decomposition(const IntervalSet& iv);

// All maximal cliques of the intersection graph, by plane sweep, in
// left-to-right order of their stabbing points.
std::vector<std::vector<int>> maximal_cliques(const IntervalSet& iv);

// Number of maximal cliques each interval belongs to (sweep, no materialized
// clique lists).
std::vector<std::int64_t> maximal_clique_membership(const IntervalSet& iv);
std::vector<std::int64_t> maximal_clique_sizes(const IntervalSet& iv);

// The full preprocessing pipeline specialized to interval orders: greedy
// decomposition, greedy point, potential by weighted chain sweep, the induced
// (coarser) interval order, its greedy decomposition, and the sorted layers.
// Runs in O(n log n); the dense pipeline reproduces the same steps on
// explicit posets.
struct IntervalExtension {
  std::vector<std::vector<int>> first_dec;
  std::vector<std::int64_t> point_num;  // greedy point numerators over n
  std::vector<std::int64_t> pot_below, pot_above;
  std::vector<std::vector<int>> layers;  // ordered weak order layers
  double greedy_entropy_bits = 0.0;      // entropy of the greedy point
  double weak_entropy_bits = 0.0;        // layer distribution entropy

  WeakOrder weak_order(int n) const { return WeakOrder::from_layers(n, layers); }
};

IntervalExtension greedy_weak_extension_intervals(const IntervalSet& iv);

}  // namespace pop
