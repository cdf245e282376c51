#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pop/flow.hpp"
#include "pop/poset.hpp"

namespace pop {

// A point asked to lie in the stable set polytope of the comparability graph:
// every maximal chain's coordinates sum to at most 1. Coordinates are exact
// rationals over a common denominator so polytope membership is decidable
// without tolerances.
struct StabPoint {
  std::int64_t den = 1;
  std::vector<std::int64_t> num;  // x_v = num[v] / den, all > 0
  double entropy_bits = 0.0;      // -(1/n) sum log2 x_v

  static StabPoint from_rationals(std::vector<std::int64_t> num, std::int64_t den);
  std::vector<double> values() const;
};

struct StabMembershipError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Node labelling of the auxiliary network certifying membership: y_s = 0,
// y_t = 1, nondecreasing along arcs, above - below = x per element.
struct Potential {
  std::int64_t den = 1;
  std::vector<std::int64_t> below, above;

  double below_of(int v) const { return static_cast<double>(below[v]) / static_cast<double>(den); }
  double above_of(int v) const { return static_cast<double>(above[v]) / static_cast<double>(den); }
};

// x_v = |S_i| / n for the set containing v.
StabPoint greedy_point(const AntichainDecomposition& dec, int n);

double greedy_entropy_from_sizes(std::span<const int> sizes, int n);

// Longest weighted chain labelling (the constructive half of the membership
// characterization). Throws StabMembershipError when some chain exceeds 1.
Potential potential_from_point(const Poset& p, const StabPoint& x);

enum class EntropyMode { comparability, complement };

struct EntropyOptions {
  int max_iters = 50000;
  double tol_bits = 1e-4;
  bool record_trace = false;
};

struct EntropyResult {
  double value_bits = 0.0;  // objective at the final iterate (upper bound on H)
  double gap_bits = 0.0;    // final linearization gap
  int iterations = 0;
  bool converged = false;
  std::vector<double> x;
  std::vector<double> trace_bits;  // per-iteration objective when recorded
};

// Minimizes -(1/n) sum log2 x_v over the stable set polytope by conditional
// gradient with pairwise steps and exact line search. Comparability mode uses
// the brute-force antichain oracle (n <= kBruteLimit); complement mode uses
// the polynomial max-weight chain oracle.
EntropyResult entropy_exact(const Poset& p, EntropyMode mode, EntropyOptions opts = {});

// Entropy of the size distribution of a partition into colour classes.
double coloring_entropy_bits(const std::vector<std::vector<int>>& classes, int n);

// Layer-distribution entropy, which for a weak order equals the graph entropy.
double weak_order_entropy_bits(const WeakOrder& w);

}  // namespace pop
