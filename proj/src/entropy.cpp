#include "pop/entropy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>

namespace pop {

namespace {

constexpr double kXFloor = 1e-12;
const double kLn2 = std::log(2.0);

}  // namespace

StabPoint StabPoint::from_rationals(std::vector<std::int64_t> num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("stab point: denominator must be positive");
  for (std::int64_t v : num)
    if (v <= 0) throw std::invalid_argument("stab point: coordinates must be positive");
  StabPoint p;
  p.den = den;
  p.num = std::move(num);
  double s = 0.0;
  for (std::int64_t v : p.num) s += std::log2(static_cast<double>(v) / static_cast<double>(den));
  p.entropy_bits = p.num.empty() ? 0.0 : -s / static_cast<double>(p.num.size());
  return p;
}

std::vector<double> StabPoint::values() const {
  std::vector<double> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i)
    out[i] = static_cast<double>(num[i]) / static_cast<double>(den);
  return out;
}

double greedy_entropy_from_sizes(std::span<const int> sizes, int n) {
  double h = 0.0;
  for (int s : sizes) {
    double f = static_cast<double>(s) / n;
    h += f * std::log2(1.0 / f);
  }
  return h;
}

StabPoint greedy_point(const AntichainDecomposition& dec, int n) {
  std::vector<std::int64_t> num(n, 0);
  for (const auto& set : dec.sets)
    for (int v : set) num[v] = static_cast<std::int64_t>(set.size());
  for (int v = 0; v < n; ++v)
    if (num[v] == 0) throw std::invalid_argument("greedy_point: decomposition does not cover element");
  return StabPoint::from_rationals(std::move(num), n);
}

Potential potential_from_point(const Poset& p, const StabPoint& x) {
  if (static_cast<int>(x.num.size()) != p.size())
    throw std::invalid_argument("potential_from_point: size mismatch");
  std::vector<std::int64_t> above = max_chain_ending_at(p, x.num);
  for (std::int64_t a : above)
    if (a > x.den)
      throw StabMembershipError("point violates a chain inequality, not in the stable set polytope");
  Potential y;
  y.den = x.den;
  y.above = std::move(above);
  y.below.resize(p.size());
  for (int v = 0; v < p.size(); ++v) y.below[v] = y.above[v] - x.num[v];
  return y;
}

namespace {

// One stable set of the relevant graph (antichain or chain of the poset),
// kept sorted, with its convex combination weight.
struct Atom {
  std::vector<int> elems;
  double lambda = 0.0;
};

struct FwProblem {
  const Poset* p = nullptr;
  EntropyMode mode = EntropyMode::comparability;
  int n = 0;

  // Maximizes sum of weights over stable sets; weights are positive.
  std::vector<int> oracle(const std::vector<double>& w) const {
    if (mode == EntropyMode::comparability) return max_antichain_brute(*p, w);
    return max_weight_chain(*p, w);
  }

  // Greedy decomposition of the relevant graph into maximum stable sets.
  std::vector<std::vector<int>> greedy_sets() const {
    if (mode == EntropyMode::comparability) {
      return greedy_antichain_decomposition(*p).sets;
    }
    // Repeatedly peel a maximum-cardinality chain.
    std::vector<std::vector<int>> sets;
    std::vector<double> w(n, 1.0);
    int left = n;
    while (left > 0) {
      std::vector<int> chain = max_weight_chain(*p, w);
      std::vector<int> taken;
      for (int v : chain)
        if (w[v] > 0.0) taken.push_back(v);
      for (int v : taken) w[v] = 0.0;
      left -= static_cast<int>(taken.size());
      assert(!taken.empty());
      sets.push_back(std::move(taken));
    }
    return sets;
  }
};

double objective_bits(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += std::log2(std::max(v, kXFloor));
  return -s / static_cast<double>(x.size());
}

}  // namespace

EntropyResult entropy_exact(const Poset& p, EntropyMode mode, EntropyOptions opts) {
  const int n = p.size();
  EntropyResult res;
  if (n == 0) {
    res.converged = true;
    return res;
  }
  if (mode == EntropyMode::comparability && n > kBruteLimit)
    throw OracleLimitError("entropy_exact: comparability mode needs n <= " +
                           std::to_string(kBruteLimit));

  FwProblem prob{&p, mode, n};

  std::vector<Atom> atoms;
  std::map<std::vector<int>, int> atom_index;
  std::vector<double> x(n, 0.0);
  auto add_atom = [&](std::vector<int> elems, double lambda) {
    std::sort(elems.begin(), elems.end());
    auto [it, inserted] = atom_index.try_emplace(elems, static_cast<int>(atoms.size()));
    if (inserted) atoms.push_back({std::move(elems), 0.0});
    atoms[it->second].lambda += lambda;
    return it->second;
  };
  auto rebuild_x = [&]() {
    std::fill(x.begin(), x.end(), 0.0);
    for (const auto& a : atoms)
      for (int v : a.elems) x[v] += a.lambda;
  };

  for (auto& set : prob.greedy_sets())
    add_atom(std::move(set), static_cast<double>(0));
  // Greedy point: weight each set by its share of the ground set. The sets
  // partition the elements, so the weights already sum to one.
  for (auto& a : atoms) a.lambda = static_cast<double>(a.elems.size()) / n;
  rebuild_x();

  std::vector<double> grad_w(n);  // positive oracle weights 1 / (n ln2 x_v)
  double gap = 0.0;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    if (opts.record_trace) res.trace_bits.push_back(objective_bits(x));
    for (int v = 0; v < n; ++v) grad_w[v] = 1.0 / (n * kLn2 * std::max(x[v], kXFloor));

    std::vector<int> s = prob.oracle(grad_w);
    double s_weight = 0.0;
    for (int v : s) s_weight += grad_w[v];
    // <grad, x> equals -1/ln2 identically for this objective.
    gap = s_weight - 1.0 / kLn2;
    if (gap <= opts.tol_bits) break;

    // Away atom: the active stable set whose weight is smallest, i.e. the
    // direction along which mass is most profitably withdrawn.
    int away = -1;
    double away_weight = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].lambda <= 0.0) continue;
      double wsum = 0.0;
      for (int v : atoms[i].elems) wsum += grad_w[v];
      if (away < 0 || wsum < away_weight) {
        away = static_cast<int>(i);
        away_weight = wsum;
      }
    }
    assert(away >= 0);

    int s_idx = add_atom(std::move(s), 0.0);
    if (s_idx == away) break;  // no direction left

    // Pairwise direction: shift mass from the away atom onto the oracle atom.
    std::vector<char> in_s(n, 0);
    for (int v : atoms[s_idx].elems) in_s[v] = 1;
    std::vector<int> gain, lose;
    for (int v : atoms[s_idx].elems) gain.push_back(v);
    for (int v : atoms[away].elems) {
      if (in_s[v])
        gain.erase(std::find(gain.begin(), gain.end(), v));
      else
        lose.push_back(v);
    }
    if (gain.empty() && lose.empty()) break;

    double gamma_max = atoms[away].lambda;
    for (int v : lose) gamma_max = std::min(gamma_max, x[v] - kXFloor);
    if (gamma_max <= 0.0) break;

    // phi'(gamma) is increasing; find its zero or settle on the boundary.
    auto dphi = [&](double g) {
      double d = 0.0;
      for (int v : lose) d += 1.0 / std::max(x[v] - g, kXFloor);
      for (int v : gain) d -= 1.0 / std::max(x[v] + g, kXFloor);
      return d / (n * kLn2);
    };
    double gamma = gamma_max;
    if (dphi(gamma_max) > 0.0) {
      double lo = 0.0, hi = gamma_max;
      for (int it2 = 0; it2 < 100; ++it2) {
        double mid = 0.5 * (lo + hi);
        (dphi(mid) > 0.0 ? hi : lo) = mid;
      }
      gamma = 0.5 * (lo + hi);
    }
    if (gamma <= 0.0) break;

    atoms[s_idx].lambda += gamma;
    atoms[away].lambda -= gamma;
    if (atoms[away].lambda < 1e-15) atoms[away].lambda = 0.0;
    for (int v : gain) x[v] += gamma;
    for (int v : lose) x[v] -= gamma;
    if ((iter & 63) == 63) rebuild_x();
  }

  rebuild_x();
  res.value_bits = objective_bits(x);
  res.gap_bits = gap;
  res.iterations = iter;
  res.converged = gap <= opts.tol_bits;
  res.x = std::move(x);
  if (opts.record_trace) res.trace_bits.push_back(res.value_bits);
  return res;
}

double coloring_entropy_bits(const std::vector<std::vector<int>>& classes, int n) {
  std::vector<char> seen(n, 0);
  int total = 0;
  double h = 0.0;
  for (const auto& cls : classes) {
    if (cls.empty()) throw std::invalid_argument("coloring: empty class");
    for (int v : cls) {
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("coloring: not a partition");
      seen[v] = 1;
    }
    total += static_cast<int>(cls.size());
    double f = static_cast<double>(cls.size()) / n;
    h -= f * std::log2(f);
  }
  if (total != n) throw std::invalid_argument("coloring: classes do not cover the ground set");
  return h;
}

double weak_order_entropy_bits(const WeakOrder& w) {
  return coloring_entropy_bits(w.layers, w.n);
}

}  // namespace pop
