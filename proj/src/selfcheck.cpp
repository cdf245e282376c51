#include "pop/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pop/bench.hpp"
#include "pop/entropy.hpp"
#include "pop/extension.hpp"
#include "pop/generators.hpp"
#include "pop/multiselect.hpp"

namespace pop {

namespace {

struct Checker {
  std::ostream& out;
  int failures = 0;

  void check(bool ok, const std::string& label) {
    out << (ok ? "ok   " : "FAIL ") << label << "\n";
    if (!ok) ++failures;
  }
};

}  // namespace

int run_selfcheck(std::ostream& out, bool quick) {
  Checker c{out};
  const int max_n = quick ? 6 : 7;
  auto corpus = small_corpus(max_n, quick ? 60 : 200);
  out << "corpus: " << corpus.size() << " posets, n <= " << max_n << "\n";

  {
    bool ok = true;
    for (const auto& item : corpus) {
      std::stringstream ss;
      write_poset(ss, item.poset);
      Poset back = read_poset(ss);
      if (!(extends(back, item.poset) && extends(item.poset, back))) ok = false;
    }
    c.check(ok, "poset file round-trip");
  }

  {
    bool ok = true;
    for (const auto& item : corpus) {
      auto dec = greedy_antichain_decomposition(item.poset);
      std::vector<char> hit(item.poset.size(), 0);
      std::uint32_t residual =
          item.poset.size() ? (1u << item.poset.size()) - 1 : 0;
      std::vector<double> unit(item.poset.size(), 1.0);
      for (const auto& set : dec.sets) {
        if (!item.poset.is_antichain(set)) ok = false;
        auto best = max_antichain_brute(item.poset, unit, residual);
        if (best.size() != set.size()) ok = false;
        for (int v : set) {
          if (hit[v]) ok = false;
          hit[v] = 1;
          residual &= ~(1u << v);
        }
      }
      if (std::count(hit.begin(), hit.end(), char(1)) != item.poset.size()) ok = false;
    }
    c.check(ok, "greedy decomposition: partition into maximum antichains");
  }

  {
    bool ok = true;
    for (const auto& item : corpus) {
      auto ext = greedy_weak_extension(item.poset);
      Poset wp = ext.weak.to_poset();
      if (!extends(wp, item.poset)) ok = false;
      if (!extends(wp, ext.interval.order)) ok = false;
      if (!extends(ext.interval.order, item.poset)) ok = false;
    }
    c.check(ok, "pipeline: weak order extends interval order extends target");
  }

  {
    bool ok = true;
    int upto = quick ? 4 : 5;
    for (const auto& item : corpus) {
      int n = item.poset.size();
      if (n > upto) continue;
      auto ext = greedy_weak_extension(item.poset);
      std::vector<int> hidden(n);
      std::iota(hidden.begin(), hidden.end(), 0);
      do {
        ComparisonOracle oracle(hidden);
        Production prod = produce(ext, oracle);
        if (!verify_production(item.poset, hidden, prod.pi)) ok = false;
      } while (std::next_permutation(hidden.begin(), hidden.end()));
    }
    c.check(ok, "produce: exhaustive verification on tiny posets");
  }

  {
    bool ok = true;
    for (std::uint64_t s = 1; s <= (quick ? 3u : 8u); ++s) {
      Poset p = gen_random(8, 0.4, s);
      auto hg = entropy_exact(p, EntropyMode::comparability);
      auto hc = entropy_exact(p, EntropyMode::complement);
      if (std::fabs(hg.value_bits + hc.value_bits - std::log2(8.0)) > 2e-3) ok = false;
    }
    c.check(ok, "entropy: comparability + complement = log2 n");
  }

  {
    bool ok = true;
    for (int k = 1; k <= (quick ? 5 : 7); ++k) {
      GkFamily fam = gen_gk(k);
      if (fam.n != k * (1 << (k - 1))) ok = false;
      auto sizes = maximal_clique_sizes(fam.intervals);
      if (static_cast<std::int64_t>(sizes.size()) != (std::int64_t(1) << k) - 1) ok = false;
      for (auto s : sizes)
        if (s != (1 << (k - 1))) ok = false;
      double want = (k - 1) / 2.0 + std::log2(static_cast<double>(k));
      double got = coloring_entropy_bits(gk_recursive_coloring(fam), fam.n);
      if (std::fabs(got - want) > 1e-9) ok = false;
    }
    c.check(ok, "recursive interval family structure");
  }

  out << (c.failures == 0 ? "selfcheck passed" : "selfcheck FAILED") << "\n";
  return c.failures;
}

}  // namespace pop
