#include "pop/multiselect.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

ComparisonOracle::ComparisonOracle(std::vector<int> hidden_ranks, bool memoize)
    : rank_(std::move(hidden_ranks)), memoize_(memoize) {
  std::vector<char> seen(rank_.size(), 0);
  for (int r : rank_) {
    if (r < 0 || r >= static_cast<int>(rank_.size()) || seen[r])
      throw std::invalid_argument("hidden order must be a permutation of 0..n-1");
    seen[r] = 1;
  }
}

ComparisonOracle ComparisonOracle::from_seed(int n, std::uint64_t seed, bool memoize) {
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  // Fisher-Yates on the raw engine output; the mt19937_64 stream is pinned by
  // the standard, so seeds reproduce across toolchains.
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(ranks[i], ranks[j]);
  }
  return ComparisonOracle(std::move(ranks), memoize);
}

bool ComparisonOracle::less_eq(int i, int j) {
  if (i < 0 || j < 0 || i >= size() || j >= size())
    throw std::invalid_argument("oracle query out of range");
  if (i == j) return true;
  if (memoize_) {
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(i, j)) << 32) |
                        static_cast<std::uint32_t>(std::max(i, j));
    if (asked_.insert(key).second)
      ++count_;
    else
      ++memo_hits_;
  } else {
    ++count_;
  }
  return rank_[i] <= rank_[j];
}

std::vector<std::vector<int>> MultiselectResult::blocks() const {
  std::vector<std::vector<int>> out;
  int prev = 0;
  auto flush = [&](int next) {
    out.emplace_back(arrangement.begin() + prev, arrangement.begin() + next);
    prev = next;
  };
  for (int c : cuts) flush(c);
  flush(static_cast<int>(arrangement.size()));
  return out;
}

namespace {

struct Selector {
  ComparisonOracle& oracle;
  std::vector<int>& arr;
  PivotMode mode;
  std::uint64_t seed;

  bool less(int a, int b) { return !oracle.less_eq(b, a); }  // strict, ranks distinct

  // Insertion sort on arr[lo, hi); used only inside median-of-medians groups.
  void insertion_sort(int lo, int hi) {
    for (int i = lo + 1; i < hi; ++i)
      for (int j = i; j > lo && less(arr[j], arr[j - 1]); --j) std::swap(arr[j], arr[j - 1]);
  }

  // Deterministic pivot with guaranteed linear-time balance: groups of five,
  // recursive median of the group medians. Returns a position in [lo, hi).
  int mom_pivot(int lo, int hi) {
    int size = hi - lo;
    if (size <= 5) {
      insertion_sort(lo, hi);
      return lo + size / 2;
    }
    int stored = lo;
    for (int g = lo; g < hi; g += 5) {
      int ge = std::min(g + 5, hi);
      insertion_sort(g, ge);
      std::swap(arr[stored++], arr[g + (ge - g) / 2]);
    }
    return mom_pivot(lo, stored);
  }

  int pick_pivot(int lo, int hi) {
    if (mode == PivotMode::median_of_medians) return mom_pivot(lo, hi);
    std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(lo) * 0x51ab3u ^
                                                   (static_cast<std::uint64_t>(hi) << 20)));
    return lo + static_cast<int>(h % static_cast<std::uint64_t>(hi - lo));
  }

  // Lomuto partition around arr[pivot_pos]; returns the pivot's final index.
  int partition(int lo, int hi, int pivot_pos) {
    std::swap(arr[pivot_pos], arr[hi - 1]);
    int pivot = arr[hi - 1];
    int store = lo;
    for (int i = lo; i < hi - 1; ++i)
      if (less(arr[i], pivot)) std::swap(arr[i], arr[store++]);
    std::swap(arr[store], arr[hi - 1]);
    return store;
  }

  // cuts pointers delimit the requested boundaries strictly inside (lo, hi).
  void select(int lo, int hi, const int* cut_begin, const int* cut_end) {
    while (cut_begin != cut_end) {
      assert(hi - lo >= 2);
      int q = partition(lo, hi, pick_pivot(lo, hi));
      const int* left_end = std::lower_bound(cut_begin, cut_end, q);
      const int* right_begin = std::upper_bound(left_end, cut_end, q + 1);
      // Cuts at q and q+1 are realized by this partition.
      select(lo, q, cut_begin, left_end);
      lo = q + 1;
      cut_begin = right_begin;
    }
  }
};

}  // namespace

MultiselectResult multiselect(ComparisonOracle& oracle, std::vector<int> ranks, PivotMode mode,
                              std::uint64_t seed) {
  const int n = oracle.size();
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1 || ranks[i] > n - 1) throw std::invalid_argument("rank out of bounds");
    if (i > 0 && ranks[i] == ranks[i - 1]) throw std::invalid_argument("ranks must be distinct");
  }
  MultiselectResult res;
  res.arrangement.resize(n);
  std::iota(res.arrangement.begin(), res.arrangement.end(), 0);
  res.cuts = std::move(ranks);
  Selector sel{oracle, res.arrangement, mode, seed};
  sel.select(0, n, res.cuts.data(), res.cuts.data() + res.cuts.size());
  return res;
}

Production produce(const GreedyExtension& ext, ComparisonOracle& oracle, PivotMode mode,
                   std::uint64_t seed) {
  const WeakOrder& w = ext.weak;
  if (oracle.size() != w.n) throw std::invalid_argument("produce: oracle size mismatch");
  if (w.n == 0) return {};
  std::int64_t before = oracle.count();
  MultiselectResult sel = multiselect(oracle, w.cut_ranks(), mode, seed);
  auto blocks = sel.blocks();
  Production out;
  out.pi.assign(w.n, -1);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    std::sort(blocks[j].begin(), blocks[j].end());
    const auto& layer = w.layers[j];  // kept sorted by WeakOrder
    assert(blocks[j].size() == layer.size());
    for (std::size_t i = 0; i < layer.size(); ++i) out.pi[layer[i]] = blocks[j][i];
  }
  out.comparisons = oracle.count() - before;
  return out;
}

Production produce(const Poset& p, ComparisonOracle& oracle, PivotMode mode, std::uint64_t seed) {
  if (p.size() == 0) return {};
  return produce(greedy_weak_extension(p), oracle, mode, seed);
}

bool verify_production(const Poset& p, const std::vector<int>& hidden_ranks,
                       const std::vector<int>& pi) {
  const int n = p.size();
  if (static_cast<int>(hidden_ranks.size()) != n || static_cast<int>(pi.size()) != n)
    throw std::invalid_argument("verify_production: size mismatch");
  std::vector<char> used(n, 0);
  for (int t : pi) {
    if (t < 0 || t >= n || used[t]) return false;
    used[t] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.leq(i, j) && hidden_ranks[pi[i]] > hidden_ranks[pi[j]]) return false;
  return true;
}

}  // namespace pop
