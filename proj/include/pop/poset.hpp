#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pop/bitmat.hpp"

namespace pop {

// Input relations close into a cycle; `cycle` lists the offending elements in order.
struct CycleError : std::invalid_argument {
  CycleError(std::string msg, std::vector<int> cyc)
      : std::invalid_argument(std::move(msg)), cycle(std::move(cyc)) {}
  std::vector<int> cycle;
};

// Raised when an exact brute-force oracle is asked for more elements than it can handle.
struct OracleLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hard limit for the exact oracles (linear extension counting, antichain enumeration).
inline constexpr int kBruteLimit = 20;

// Finite poset on elements 0..n-1. The relation is stored as the full
// reflexive-transitive closure (bit rows) plus its transitive reduction
// (the cover arcs). Immutable after construction.
class Poset {
 public:
  Poset() = default;

  int size() const { return n_; }
  bool leq(int v, int w) const { return up_.get(v, w); }
  bool less(int v, int w) const { return v != w && up_.get(v, w); }
  bool comparable(int v, int w) const { return up_.get(v, w) || up_.get(w, v); }

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& cover_succ(int v) const { return succ_[v]; }
  const std::vector<int>& cover_pred(int v) const { return pred_[v]; }
  // Some linear extension, ascending tie-break.
  const std::vector<int>& topo_order() const { return topo_; }

  bool is_minimal(int v) const { return pred_[v].empty(); }
  bool is_maximal(int v) const { return succ_[v].empty(); }
  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;

  bool is_antichain(std::span<const int> elems) const;
  bool is_chain(std::span<const int> elems) const;

  const BitMatrix& closure() const { return up_; }

  // Builds from an already closed relation matrix (diagonal set, transitive).
  static Poset from_closure(BitMatrix up);

 private:
  int n_ = 0;
  BitMatrix up_;  // up_.get(v, w) == (v <= w)
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> succ_, pred_;
  std::vector<int> topo_;

  friend Poset from_relations(int n, const std::vector<std::pair<int, int>>& pairs);
  void finish_from_closure();
};

// Closes an arbitrary generating set of relations. Throws CycleError when the
// pairs are not acyclic, std::invalid_argument on out-of-range indices.
Poset from_relations(int n, const std::vector<std::pair<int, int>>& pairs);

// True iff every relation of p also holds in q (same ground set required).
bool extends(const Poset& q, const Poset& p);

struct LinearExtensionCount {
  std::uint64_t value = 0;
};

// Exact e(P) by dynamic programming over downsets; n <= kBruteLimit.
LinearExtensionCount count_linear_extensions(const Poset& p);

double log2_factorial(int n);

// log2 n! - log2 e(P), in bits. Needs the exact oracle.
double itlb_bits(const Poset& p);

// Maximum-weight antichain by memoized subset DP; n <= kBruteLimit.
// Unweighted overload maximizes cardinality. `subset` restricts the ground set.
std::vector<int> max_antichain_brute(const Poset& p);
std::vector<int> max_antichain_brute(const Poset& p, std::span<const double> weights);
std::vector<int> max_antichain_brute(const Poset& p, std::span<const double> weights,
                                     std::uint32_t subset);

// Maximum-weight chain (weights >= 0) via longest-path DP over cover arcs.
// Works at any size. Returns the chain bottom-up.
std::vector<int> max_weight_chain(const Poset& p, std::span<const double> weights);
double chain_weight(std::span<const int> chain, std::span<const double> weights);

// Per-element best chain value ending at v, integer weights (used for exact potentials).
std::vector<std::int64_t> max_chain_ending_at(const Poset& p, std::span<const std::int64_t> weights);

// Layered extension: ordered antichains partitioning the ground set.
struct WeakOrder {
  int n = 0;
  std::vector<std::vector<int>> layers;

  static WeakOrder from_layers(int n, std::vector<std::vector<int>> layers);
  static WeakOrder from_layer_sizes(std::span<const int> sizes);

  std::vector<int> layer_of() const;
  // Cut positions sum |A_1|..|A_i| for i=1..k-1.
  std::vector<int> cut_ranks() const;
  Poset to_poset() const;
  double log2_extension_count() const;  // log2 e(W) = sum log2 |A_i|!
};

// Endpoint representation of an interval order; all endpoints are exact
// rationals over a common denominator. v <= w iff right(v) <= left(w) or v == w.
struct IntervalOrder {
  std::int64_t den = 1;
  std::vector<std::int64_t> left, right;
  Poset order;

  static IntervalOrder from_endpoints(std::vector<std::int64_t> left,
                                      std::vector<std::int64_t> right, std::int64_t den);
  int size() const { return order.size(); }
};

// Text format: "n <count>" then one "v w" pair per line, '#' comments.
Poset read_poset(std::istream& in);
void write_poset(std::ostream& out, const Poset& p);
Poset load_poset_file(const std::string& path);
void save_poset_file(const std::string& path, const Poset& p);

}  // namespace pop
