#include "pop/extension.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pop/intervals.hpp"

namespace pop {

IntervalOrder interval_order_from_potential(const Poset& p, const Potential& y) {
  if (static_cast<int>(y.above.size()) != p.size())
    throw std::invalid_argument("interval_order_from_potential: size mismatch");
  IntervalOrder io = IntervalOrder::from_endpoints(y.below, y.above, y.den);
  if (!extends(io.order, p))
    throw std::logic_error("potential does not induce an extension of the poset");
  return io;
}

std::vector<int> sort_antichains(const IntervalOrder& io, const AntichainDecomposition& dec) {
  const std::size_t k = dec.sets.size();
  // An antichain's intervals share a point, so max left < min right. If some
  // a in A precedes some b in B then min_right(A) <= max_left(B) < min_right(B);
  // sorting by min right therefore realizes every strict relation, any
  // tie-break.
  std::vector<std::pair<std::int64_t, std::int64_t>> key(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (dec.sets[i].empty()) throw std::invalid_argument("sort_antichains: empty antichain");
    std::int64_t minl = std::numeric_limits<std::int64_t>::max();
    std::int64_t minr = std::numeric_limits<std::int64_t>::max();
    for (int v : dec.sets[i]) {
      minl = std::min(minl, io.left[v]);
      minr = std::min(minr, io.right[v]);
    }
    key[i] = {minr, minl};
  }
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::sort(sigma.begin(), sigma.end(), [&](int a, int b) { return key[a] < key[b]; });

  // Validate: v < w in the interval order forces v's antichain earlier.
  std::vector<std::int64_t> max_left(k), min_right(k);
  for (std::size_t i = 0; i < k; ++i) {
    max_left[i] = std::numeric_limits<std::int64_t>::min();
    min_right[i] = std::numeric_limits<std::int64_t>::max();
    for (int v : dec.sets[sigma[i]]) {
      max_left[i] = std::max(max_left[i], io.left[v]);
      min_right[i] = std::min(min_right[i], io.right[v]);
    }
  }
  std::int64_t suffix_min = std::numeric_limits<std::int64_t>::max();
  for (std::size_t j = k; j-- > 0;) {
    if (suffix_min <= max_left[j])
      throw std::logic_error("no antichain ordering consistent with the interval order");
    suffix_min = std::min(suffix_min, min_right[j]);
  }
  return sigma;
}

GreedyExtension greedy_weak_extension(const Poset& p) {
  GreedyExtension ext;
  const int n = p.size();
  if (n == 0) {
    ext.weak.n = 0;
    return ext;
  }
  ext.first_dec = greedy_antichain_decomposition(p);
  ext.point = greedy_point(ext.first_dec, n);
  ext.potential = potential_from_point(p, ext.point);
  ext.interval = interval_order_from_potential(p, ext.potential);

  // The second greedy decomposition runs on the interval order, where maximum
  // antichains are deepest stabbing points of the open potential intervals.
  IntervalSet open;
  open.lo.resize(n);
  open.hi.resize(n);
  for (int v = 0; v < n; ++v) {
    open.lo[v] = 2 * ext.potential.below[v] + 1;
    open.hi[v] = 2 * ext.potential.above[v] - 1;
  }
  ext.second_dec.sets = greedy_interval_decomposition(open);
  ext.sigma = sort_antichains(ext.interval, ext.second_dec);

  std::vector<std::vector<int>> layers(ext.second_dec.sets.size());
  for (std::size_t i = 0; i < ext.sigma.size(); ++i) layers[i] = ext.second_dec.sets[ext.sigma[i]];
  ext.weak = WeakOrder::from_layers(n, std::move(layers));
  return ext;
}

}  // namespace pop
