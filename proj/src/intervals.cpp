#include "pop/intervals.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pop {

namespace {

std::vector<std::int64_t> compress_coords(const IntervalSet& iv) {
  std::vector<std::int64_t> coords;
  coords.reserve(iv.lo.size() * 2);
  coords.insert(coords.end(), iv.lo.begin(), iv.lo.end());
  coords.insert(coords.end(), iv.hi.begin(), iv.hi.end());
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

int coord_index(const std::vector<std::int64_t>& coords, std::int64_t x) {
  return static_cast<int>(std::lower_bound(coords.begin(), coords.end(), x) - coords.begin());
}

// Range-add segment tree tracking the maximum and its leftmost position.
class CoverTree {
 public:
  explicit CoverTree(int m) : m_(std::max(m, 1)), maxv_(4 * m_, 0), addv_(4 * m_, 0) {}

  void add(int l, int r, int delta) { add(1, 0, m_ - 1, l, r, delta); }
  std::pair<int, int> top() const { return {maxv_[1] + addv_[1], leftmost(1, 0, m_ - 1)}; }

 private:
  int m_;
  std::vector<int> maxv_, addv_;

  void add(int node, int lo, int hi, int l, int r, int delta) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      addv_[node] += delta;
      return;
    }
    int mid = (lo + hi) / 2;
    add(2 * node, lo, mid, l, r, delta);
    add(2 * node + 1, mid + 1, hi, l, r, delta);
    maxv_[node] =
        std::max(maxv_[2 * node] + addv_[2 * node], maxv_[2 * node + 1] + addv_[2 * node + 1]);
  }

  int leftmost(int node, int lo, int hi) const {
    if (lo == hi) return lo;
    int mid = (lo + hi) / 2;
    int leftv = maxv_[2 * node] + addv_[2 * node];
    int rightv = maxv_[2 * node + 1] + addv_[2 * node + 1];
    if (leftv >= rightv) return leftmost(2 * node, lo, mid);
    return leftmost(2 * node + 1, mid + 1, hi);
  }
};

// Interval stabbing structure: each interval sits on O(log m) canonical
// nodes; a point query walks one root-leaf path and meets every alive
// interval covering the point. Entries die lazily.
class StabTree {
 public:
  StabTree(int m, int n) : m_(std::max(m, 1)), ids_(4 * m_), alive_(n, 1) {}

  void insert(int l, int r, int id) { insert(1, 0, m_ - 1, l, r, id); }

  // Collects and kills every alive interval covering the point.
  void extract(int pos, std::vector<int>& out) {
    int node = 1, lo = 0, hi = m_ - 1;
    while (true) {
      auto& bucket = ids_[node];
      for (int id : bucket)
        if (alive_[id]) {
          alive_[id] = 0;
          out.push_back(id);
        }
      bucket.clear();
      if (lo == hi) break;
      int mid = (lo + hi) / 2;
      if (pos <= mid) {
        node = 2 * node;
        hi = mid;
      } else {
        node = 2 * node + 1;
        lo = mid + 1;
      }
    }
  }

 private:
  int m_;
  std::vector<std::vector<int>> ids_;
  std::vector<char> alive_;

  void insert(int node, int lo, int hi, int l, int r, int id) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      ids_[node].push_back(id);
      return;
    }
    int mid = (lo + hi) / 2;
    insert(2 * node, lo, mid, l, r, id);
    insert(2 * node + 1, mid + 1, hi, l, r, id);
  }
};

// Stabbing coordinates and cardinalities of all maximal cliques of the
// intersection graph, in sweep order: a clique is emitted at a coordinate
// where some interval ends after at least one interval joined since the
// previous emission.
struct CliqueSweep {
  std::vector<std::int64_t> coords;
  std::vector<std::int64_t> sizes;
};

CliqueSweep sweep_cliques(const IntervalSet& iv) {
  CliqueSweep out;
  const int n = iv.size();
  if (n == 0) return out;
  std::vector<int> by_lo(n), by_hi(n);
  std::iota(by_lo.begin(), by_lo.end(), 0);
  std::iota(by_hi.begin(), by_hi.end(), 0);
  std::sort(by_lo.begin(), by_lo.end(), [&](int a, int b) { return iv.lo[a] < iv.lo[b]; });
  std::sort(by_hi.begin(), by_hi.end(), [&](int a, int b) { return iv.hi[a] < iv.hi[b]; });
  std::size_t ai = 0, ri = 0;
  std::int64_t active = 0;
  bool fresh = false;
  while (ri < by_hi.size()) {
    std::int64_t c = iv.hi[by_hi[ri]];
    if (ai < by_lo.size()) c = std::min(c, iv.lo[by_lo[ai]]);
    while (ai < by_lo.size() && iv.lo[by_lo[ai]] == c) {
      ++ai;
      ++active;
      fresh = true;
    }
    if (iv.hi[by_hi[ri]] == c && fresh) {
      out.coords.push_back(c);
      out.sizes.push_back(active);
      fresh = false;
    }
    while (ri < by_hi.size() && iv.hi[by_hi[ri]] == c) {
      ++ri;
      --active;
    }
  }
  return out;
}

}  // namespace

IntervalOrder IntervalSet::to_interval_order() const {
  std::vector<std::int64_t> left(lo.size()), right(hi.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("interval set: lo must not exceed hi");
    left[i] = 2 * lo[i];
    right[i] = 2 * hi[i] + 1;
  }
  std::int64_t den = 1;
  for (std::int64_t r : right) den = std::max(den, r);
  return IntervalOrder::from_endpoints(std::move(left), std::move(right), den);
}

std::vector<std::vector<int>> greedy_interval_decomposition(const IntervalSet& iv) {
  const int n = iv.size();
  std::vector<std::vector<int>> sets;
  if (n == 0) return sets;
  auto coords = compress_coords(iv);
  int m = static_cast<int>(coords.size());
  CoverTree cover(m);
  StabTree stab(m, n);
  for (int i = 0; i < n; ++i) {
    int l = coord_index(coords, iv.lo[i]);
    int r = coord_index(coords, iv.hi[i]);
    cover.add(l, r, 1);
    stab.insert(l, r, i);
  }
  int left = n;
  while (left > 0) {
    auto [depth, pos] = cover.top();
    assert(depth > 0);
    std::vector<int> members;
    stab.extract(pos, members);
    assert(static_cast<int>(members.size()) == depth);
    for (int id : members)
      cover.add(coord_index(coords, iv.lo[id]), coord_index(coords, iv.hi[id]), -1);
    left -= static_cast<int>(members.size());
    std::sort(members.begin(), members.end());
    sets.push_back(std::move(members));
  }
  return sets;
}

std::vector<std::vector<int>> maximal_cliques(const IntervalSet& iv) {
  CliqueSweep sweep = sweep_cliques(iv);
  std::vector<std::vector<int>> cliques;
  cliques.reserve(sweep.coords.size());
  for (std::int64_t c : sweep.coords) {
    std::vector<int> clique;
    for (int v = 0; v < iv.size(); ++v)
      if (iv.lo[v] <= c && c <= iv.hi[v]) clique.push_back(v);
    cliques.push_back(std::move(clique));
  }
  return cliques;
}

std::vector<std::int64_t> maximal_clique_sizes(const IntervalSet& iv) {
  return sweep_cliques(iv).sizes;
}

std::vector<std::int64_t> maximal_clique_membership(const IntervalSet& iv) {
  CliqueSweep sweep = sweep_cliques(iv);
  std::vector<std::int64_t> counts(iv.size(), 0);
  for (int v = 0; v < iv.size(); ++v) {
    auto lo_it = std::lower_bound(sweep.coords.begin(), sweep.coords.end(), iv.lo[v]);
    auto hi_it = std::upper_bound(sweep.coords.begin(), sweep.coords.end(), iv.hi[v]);
    counts[v] = hi_it - lo_it;
  }
  return counts;
}

IntervalExtension greedy_weak_extension_intervals(const IntervalSet& iv) {
  const int n = iv.size();
  IntervalExtension ext;
  if (n == 0) return ext;

  ext.first_dec = greedy_interval_decomposition(iv);
  ext.point_num.assign(n, 0);
  for (const auto& set : ext.first_dec)
    for (int v : set) ext.point_num[v] = static_cast<std::int64_t>(set.size());
  {
    std::vector<int> sizes;
    for (const auto& s : ext.first_dec) sizes.push_back(static_cast<int>(s.size()));
    ext.greedy_entropy_bits = greedy_entropy_from_sizes(sizes, n);
  }

  // Longest weighted chain ending at each interval: chains are sequences of
  // strictly separated intervals, so a running maximum over already finished
  // intervals (two-pointer by lo against hi) suffices.
  ext.pot_below.assign(n, 0);
  ext.pot_above.assign(n, 0);
  {
    std::vector<int> by_lo(n), by_hi(n);
    std::iota(by_lo.begin(), by_lo.end(), 0);
    std::iota(by_hi.begin(), by_hi.end(), 0);
    std::sort(by_lo.begin(), by_lo.end(), [&](int a, int b) { return iv.lo[a] < iv.lo[b]; });
    std::sort(by_hi.begin(), by_hi.end(), [&](int a, int b) { return iv.hi[a] < iv.hi[b]; });
    std::size_t ptr = 0;
    std::int64_t run_max = 0;
    for (int v : by_lo) {
      while (ptr < by_hi.size() && iv.hi[by_hi[ptr]] < iv.lo[v]) {
        run_max = std::max(run_max, ext.pot_above[by_hi[ptr]]);
        ++ptr;
      }
      ext.pot_below[v] = run_max;
      ext.pot_above[v] = run_max + ext.point_num[v];
    }
  }

  // Second decomposition on the uncrossed order. Its comparability rule is
  // non-strict (above[v] <= below[w]), i.e. open potential intervals; doubling
  // turns the open intersection test into a closed one on integers.
  IntervalSet open;
  open.lo.resize(n);
  open.hi.resize(n);
  for (int v = 0; v < n; ++v) {
    open.lo[v] = 2 * ext.pot_below[v] + 1;
    open.hi[v] = 2 * ext.pot_above[v] - 1;
  }
  std::vector<std::vector<int>> dec2 = greedy_interval_decomposition(open);

  // Order the antichains by smallest right endpoint: each one stabs a common
  // point, so any strict relation from A into B forces
  // min_right(A) <= max_left(B) < min_right(B). Validate afterwards.
  std::vector<int> order(dec2.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<std::int64_t, std::int64_t>> key(dec2.size());
  for (std::size_t i = 0; i < dec2.size(); ++i) {
    std::int64_t minl = std::numeric_limits<std::int64_t>::max();
    std::int64_t minr = std::numeric_limits<std::int64_t>::max();
    for (int v : dec2[i]) {
      minl = std::min(minl, ext.pot_below[v]);
      minr = std::min(minr, ext.pot_above[v]);
    }
    key[i] = {minr, minl};
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  ext.layers.resize(dec2.size());
  for (std::size_t i = 0; i < order.size(); ++i) ext.layers[i] = std::move(dec2[order[i]]);

  {
    // v strictly below w in the uncrossed order must land on an earlier layer.
    std::size_t k = ext.layers.size();
    std::vector<std::int64_t> max_below(k), min_above(k);
    for (std::size_t i = 0; i < k; ++i) {
      max_below[i] = std::numeric_limits<std::int64_t>::min();
      min_above[i] = std::numeric_limits<std::int64_t>::max();
      for (int v : ext.layers[i]) {
        max_below[i] = std::max(max_below[i], ext.pot_below[v]);
        min_above[i] = std::min(min_above[i], ext.pot_above[v]);
      }
    }
    std::int64_t suffix_min = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = k; j-- > 0;) {
      if (suffix_min <= max_below[j])
        throw std::logic_error("antichain ordering violates the interval order");
      suffix_min = std::min(suffix_min, min_above[j]);
    }
  }

  {
    std::vector<int> sizes;
    for (const auto& s : ext.layers) sizes.push_back(static_cast<int>(s.size()));
    ext.weak_entropy_bits = greedy_entropy_from_sizes(sizes, n);
  }
  return ext;
}

}  // namespace pop
