#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pop/poset.hpp"

namespace test_util {

// Independent oracle: count linear extensions by enumerating every
// permutation and keeping the order-preserving ones. Only for tiny n.
inline std::uint64_t count_extensions_by_enumeration(const pop::Poset& p) {
  int n = p.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      for (int w = 0; w < n && ok; ++w)
        if (p.less(v, w) && pos[v] > pos[w]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Independent oracle: maximum antichain cardinality by subset enumeration.
inline int max_antichain_size_by_enumeration(const pop::Poset& p, std::uint32_t subset) {
  int best = 0;
  for (std::uint32_t s = subset;; s = (s - 1) & subset) {
    bool anti = true;
    for (int v = 0; v < p.size() && anti; ++v) {
      if (!(s >> v & 1)) continue;
      for (int w = v + 1; w < p.size() && anti; ++w)
        if ((s >> w & 1) && p.comparable(v, w)) anti = false;
    }
    if (anti) best = std::max(best, std::popcount(s));
    if (s == 0) break;
  }
  return best;
}

inline pop::Poset v_poset() { return pop::from_relations(3, {{0, 1}, {0, 2}}); }
inline pop::Poset n_poset() { return pop::from_relations(4, {{0, 2}, {0, 3}, {1, 3}}); }

}  // namespace test_util
