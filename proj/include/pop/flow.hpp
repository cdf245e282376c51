#pragma once

#include <random>
#include <string>
#include <vector>

#include "pop/poset.hpp"

namespace pop {

// Auxiliary flow network built from a poset: every element v splits into an
// arc (v-, v+) with lower bound 1, cover pairs connect v+ to w-, a source
// feeds the minimal elements and the maximal ones drain into the sink.
// Node ids: v- = 2v, v+ = 2v+1, s = 2n, t = 2n+1.
struct Network {
  struct Arc {
    int from = 0, to = 0;
    int lower = 0;
    int flow = 0;
  };

  int n = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;  // arc ids leaving each node
  std::vector<std::vector<int>> in;   // arc ids entering each node
  std::vector<int> element_arc;       // arc id of (v-, v+) per element

  int node_count() const { return 2 * n + 2; }
  int source() const { return 2 * n; }
  int sink() const { return 2 * n + 1; }
  static int below(int v) { return 2 * v; }
  static int above(int v) { return 2 * v + 1; }

  int arc_between(int from, int to) const;  // -1 when absent
  int flow_value() const;
  bool flow_feasible() const;  // conservation plus lower bounds
  std::string to_dot() const;
};

Network build_network(const Poset& p);

// Routes one unit along a maximal chain through every element; value n,
// deterministic (smallest cover neighbour at every step).
void set_initial_flow(Network& net, const Poset& p);
// Same scheme with randomized chain choices, for metamorphic checks.
void set_initial_flow(Network& net, const Poset& p, std::mt19937_64& rng);

// Nodes reachable from the source by decrementing paths: forward arcs with
// flow above their lower bound, backward arcs unconditionally.
std::vector<char> decrementing_reachable(const Network& net);

struct AntichainDecomposition {
  std::vector<std::vector<int>> sets;
  int loop_iterations = 0;  // decrements plus extractions; at most 2n-1

  int set_count() const { return static_cast<int>(sets.size()); }
  std::vector<int> set_of(int n) const;  // element -> index of its set
  std::vector<int> sizes() const;
};

// Greedy maximum-antichain decomposition by repeated flow decrements.
// Each extracted set is a maximum antichain of the poset minus the
// previously extracted ones; extraction order is the returned order.
AntichainDecomposition greedy_antichain_decomposition(const Poset& p);
// Runs the extraction loop on a prepared network (flow already feasible).
AntichainDecomposition greedy_antichain_decomposition(Network& net);

}  // namespace pop
