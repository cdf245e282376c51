#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pop/intervals.hpp"
#include "pop/poset.hpp"

namespace pop {

Poset gen_chain(int n);
Poset gen_antichain(int n);
// k-th smallest: layers (k-1, 1, n-k); empty layers are dropped.
Poset gen_selection(int n, int k);
// Weak order whose layers are the gaps between consecutive cut ranks.
Poset gen_multiselection(int n, const std::vector<int>& ranks);
WeakOrder weak_order_for_selection(int n, int k);
WeakOrder weak_order_for_ranks(int n, const std::vector<int>& ranks);
// Complete binary tree of the given depth, every parent above its children.
Poset gen_heap(int depth);
// Transitive closure of a random DAG drawn on a shuffled topological order.
Poset gen_random(int n, double p, std::uint64_t seed);

// Recursive interval-graph family: level k glues a central clique of size
// 2^(k-1) between two copies of level k-1; the complement is the
// comparability graph of the interval order carried by the representation.
struct GkFamily {
  int k = 0;
  int n = 0;
  IntervalSet intervals;       // closed integer representation
  std::vector<int> depth;      // recursion depth of each vertex, 1..k
  IntervalOrder interval_order() const { return intervals.to_interval_order(); }
  Poset poset() const;         // materialized order; guarded for large k
};

GkFamily gen_gk(int k);

// The recursive coloring: central clique first, then both copies; class
// sizes are 2^(k-i) with multiplicity 2^(i-1).
std::vector<std::vector<int>> gk_recursive_coloring(const GkFamily& fam);

// Entropy of the uniform mixture of all maximal antichains, computed from
// per-vertex membership counts.
double gk_upper_point_entropy(const GkFamily& fam);

struct NamedPoset {
  std::string name;
  Poset poset;
};

// Deterministic corpus of small posets across all families plus seeded random
// ones; at least min_count entries, each of size <= max_n.
std::vector<NamedPoset> small_corpus(int max_n, int min_count = 200);

}  // namespace pop
