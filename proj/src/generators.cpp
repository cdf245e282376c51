#include "pop/generators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pop {

Poset gen_chain(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return from_relations(n, pairs);
}

Poset gen_antichain(int n) { return from_relations(n, {}); }

WeakOrder weak_order_for_selection(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("selection: k must be in 1..n");
  std::vector<int> sizes;
  if (k - 1 > 0) sizes.push_back(k - 1);
  sizes.push_back(1);
  if (n - k > 0) sizes.push_back(n - k);
  return WeakOrder::from_layer_sizes(sizes);
}

WeakOrder weak_order_for_ranks(int n, const std::vector<int>& ranks) {
  std::vector<int> cuts = ranks;
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> sizes;
  int prev = 0;
  for (int r : cuts) {
    if (r < 1 || r > n - 1 || r == prev)
      throw std::invalid_argument("multiselection: ranks must be distinct in 1..n-1");
    if (r < prev) throw std::invalid_argument("multiselection: ranks must increase");
    sizes.push_back(r - prev);
    prev = r;
  }
  sizes.push_back(n - prev);
  return WeakOrder::from_layer_sizes(sizes);
}

Poset gen_selection(int n, int k) { return weak_order_for_selection(n, k).to_poset(); }

Poset gen_multiselection(int n, const std::vector<int>& ranks) {
  return weak_order_for_ranks(n, ranks).to_poset();
}

Poset gen_heap(int depth) {
  if (depth < 1) throw std::invalid_argument("heap: depth must be at least 1");
  if (depth > 25) throw std::invalid_argument("heap: depth too large");
  int n = (1 << depth) - 1;
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) pairs.emplace_back(v, (v - 1) / 2);  // child below parent
  return from_relations(n, pairs);
}

Poset gen_random(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("random poset: bad size");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("random poset: p must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[i], order[j]);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) pairs.emplace_back(order[i], order[j]);
    }
  return from_relations(n, pairs);
}

namespace {

// Width of the level-k representation: W(1) = 1, W(k) = 2 W(k-1) + 2.
std::int64_t gk_width(int k) { return 3 * (std::int64_t(1) << (k - 1)) - 2; }

void gk_build(int k, std::int64_t offset, int rec_depth, GkFamily& fam,
              std::vector<std::vector<int>>* classes) {
  if (k == 1) {
    int id = static_cast<int>(fam.intervals.lo.size());
    fam.intervals.lo.push_back(offset);
    fam.intervals.hi.push_back(offset + 1);
    fam.depth.push_back(rec_depth);
    if (classes) classes->push_back({id});
    return;
  }
  std::int64_t sub = gk_width(k - 1);
  std::int64_t mid = offset + sub + 1;
  int half = 1 << (k - 2);
  std::vector<int> central;
  for (int i = 0; i < half; ++i) {
    central.push_back(static_cast<int>(fam.intervals.lo.size()));
    fam.intervals.lo.push_back(offset);
    fam.intervals.hi.push_back(mid);
    fam.depth.push_back(rec_depth);
  }
  for (int i = 0; i < half; ++i) {
    central.push_back(static_cast<int>(fam.intervals.lo.size()));
    fam.intervals.lo.push_back(mid);
    fam.intervals.hi.push_back(offset + gk_width(k));
    fam.depth.push_back(rec_depth);
  }
  if (classes) classes->push_back(std::move(central));
  gk_build(k - 1, offset, rec_depth + 1, fam, classes);
  gk_build(k - 1, offset + sub + 2, rec_depth + 1, fam, classes);
}

}  // namespace

GkFamily gen_gk(int k) {
  if (k < 1) throw std::invalid_argument("gk: level must be at least 1");
  if (k > 20) throw std::invalid_argument("gk: level too large to materialize");
  GkFamily fam;
  fam.k = k;
  fam.n = k * (1 << (k - 1));
  fam.intervals.lo.reserve(fam.n);
  fam.intervals.hi.reserve(fam.n);
  fam.depth.reserve(fam.n);
  gk_build(k, 0, 1, fam, nullptr);
  assert(static_cast<int>(fam.intervals.lo.size()) == fam.n);
  return fam;
}

Poset GkFamily::poset() const {
  if (n > 20000) throw std::invalid_argument("gk: order too large to materialize densely");
  return interval_order().order;
}

std::vector<std::vector<int>> gk_recursive_coloring(const GkFamily& fam) {
  GkFamily scratch;
  scratch.k = fam.k;
  scratch.n = fam.n;
  std::vector<std::vector<int>> classes;
  gk_build(fam.k, 0, 1, scratch, &classes);
  return classes;
}

double gk_upper_point_entropy(const GkFamily& fam) {
  std::vector<std::int64_t> counts = maximal_clique_membership(fam.intervals);
  double stable_sets = static_cast<double>((std::int64_t(1) << fam.k) - 1);
  double h = 0.0;
  for (std::int64_t c : counts) {
    assert(c > 0);
    h -= std::log2(static_cast<double>(c) / stable_sets);
  }
  return h / static_cast<double>(fam.n);
}

std::vector<NamedPoset> small_corpus(int max_n, int min_count) {
  std::vector<NamedPoset> out;
  auto add = [&](std::string name, Poset p) {
    if (p.size() <= max_n) out.push_back({std::move(name), std::move(p)});
  };

  for (int n = 1; n <= max_n; ++n) add("chain" + std::to_string(n), gen_chain(n));
  for (int n = 1; n <= max_n; ++n) add("antichain" + std::to_string(n), gen_antichain(n));
  add("v_poset", from_relations(3, {{0, 1}, {0, 2}}));
  add("lambda_poset", from_relations(3, {{0, 2}, {1, 2}}));
  add("n_poset", from_relations(4, {{0, 2}, {0, 3}, {1, 3}}));
  add("bowtie", from_relations(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  add("diamond", from_relations(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  add("single_edge_plus_isolated", from_relations(3, {{1, 2}}));
  for (int d = 1; (1 << d) - 1 <= max_n; ++d) add("heap" + std::to_string(d), gen_heap(d));
  for (int n = 2; n <= max_n; ++n)
    for (int k = 1; k <= n; ++k)
      add("selection_n" + std::to_string(n) + "_k" + std::to_string(k), gen_selection(n, k));
  for (int n = 4; n <= max_n; ++n) {
    add("multiselection_n" + std::to_string(n) + "_a", gen_multiselection(n, {1, n - 1}));
    if (n >= 5) add("multiselection_n" + std::to_string(n) + "_b", gen_multiselection(n, {2, n - 2}));
  }
  for (int k = 1; k <= 3 && k * (1 << (k - 1)) <= max_n; ++k)
    add("gk" + std::to_string(k), gen_gk(k).poset());

  const double probs[] = {0.15, 0.3, 0.5, 0.7, 0.85};
  auto add_random_round = [&](std::uint64_t seed) {
    for (int n = 2; n <= max_n; ++n)
      for (double p : probs)
        add("random_n" + std::to_string(n) + "_p" + std::to_string(static_cast<int>(p * 100)) +
                "_s" + std::to_string(seed),
            gen_random(n, p, seed));
  };
  std::uint64_t seed = 1;
  for (; seed <= 6; ++seed) add_random_round(seed);
  while (static_cast<int>(out.size()) < min_count) add_random_round(seed++);
  return out;
}

}  // namespace pop
