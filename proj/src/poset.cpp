#include "pop/poset.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pop {

namespace {

std::vector<int> find_cycle(int n, const std::vector<std::vector<int>>& adj,
                            const std::vector<char>& in_cycle_part) {
  // DFS restricted to the nodes left over by Kahn's algorithm; any back edge
  // closes a cycle.
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<int> parent(n, -1);
  for (int s = 0; s < n; ++s) {
    if (!in_cycle_part[s] || state[s] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < adj[v].size()) {
        int w = adj[v][idx++];
        if (!in_cycle_part[w]) continue;
        if (state[w] == 0) {
          state[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        } else if (state[w] == 1) {
          std::vector<int> cyc{w};
          for (int u = v; u != w; u = parent[u]) cyc.push_back(u);
          std::reverse(cyc.begin() + 1, cyc.end());
          return cyc;
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

void Poset::finish_from_closure() {
  n_ = up_.size();
  // Strict part of each row drives both the reduction and the topo order.
  BitMatrix strict = up_;
  for (int v = 0; v < n_; ++v) strict.clear(v, v);

  // covers(v, w): w strictly above v with nothing strictly between.
  covers_.clear();
  succ_.assign(n_, {});
  pred_.assign(n_, {});
  BitMatrix mid(n_);
  for (int v = 0; v < n_; ++v) {
    std::uint64_t* acc = mid.row(v);
    const std::uint64_t* sv = strict.row(v);
    for (int w = 0; w < strict.row_words(); ++w) acc[w] = sv[w];
    strict.for_each_in_row(v, [&](int z) {
      const std::uint64_t* sz = strict.row(z);
      for (int w = 0; w < strict.row_words(); ++w) acc[w] &= ~sz[w];
    });
    mid.for_each_in_row(v, [&](int w) {
      covers_.emplace_back(v, w);
      succ_[v].push_back(w);
      pred_[w].push_back(v);
    });
  }
  std::sort(covers_.begin(), covers_.end());
  for (auto& s : succ_) std::sort(s.begin(), s.end());
  for (auto& s : pred_) std::sort(s.begin(), s.end());

  // Kahn over cover arcs, smallest element first.
  topo_.clear();
  topo_.reserve(n_);
  std::vector<int> indeg(n_);
  for (int v = 0; v < n_; ++v) indeg[v] = static_cast<int>(pred_[v].size());
  std::vector<int> ready;
  for (int v = 0; v < n_; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (int w : succ_[v]) {
      if (--indeg[w] == 0) {
        ready.push_back(w);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  assert(static_cast<int>(topo_.size()) == n_);
}

Poset Poset::from_closure(BitMatrix up) {
  Poset p;
  p.up_ = std::move(up);
  p.finish_from_closure();
  return p;
}

Poset from_relations(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 0) throw std::invalid_argument("poset size must be nonnegative");
  std::vector<std::vector<int>> adj(n);
  for (auto [v, w] : pairs) {
    if (v < 0 || v >= n || w < 0 || w >= n)
      throw std::invalid_argument("relation index out of range");
    if (v != w) adj[v].push_back(w);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  // Kahn's algorithm; leftovers witness a cycle (antisymmetry failure).
  std::vector<int> indeg(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) ++indeg[w];
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    order.push_back(v);
    for (int w : adj[v])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  if (static_cast<int>(order.size()) != n) {
    std::vector<char> leftover(n, 0);
    for (int v = 0; v < n; ++v) leftover[v] = 1;
    for (int v : order) leftover[v] = 0;
    std::vector<int> cyc = find_cycle(n, adj, leftover);
    std::ostringstream msg;
    msg << "relations contain a cycle:";
    for (int v : cyc) msg << ' ' << v;
    throw CycleError(msg.str(), std::move(cyc));
  }

  BitMatrix up(n);
  for (int v = 0; v < n; ++v) up.set(v, v);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int w : adj[v]) up.or_row(v, w);
  }

  Poset p;
  p.up_ = std::move(up);
  p.finish_from_closure();
  return p;
}

std::vector<int> Poset::minimal_elements() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (is_minimal(v)) out.push_back(v);
  return out;
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (is_maximal(v)) out.push_back(v);
  return out;
}

bool Poset::is_antichain(std::span<const int> elems) const {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (comparable(elems[i], elems[j])) return false;
  return true;
}

bool Poset::is_chain(std::span<const int> elems) const {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!comparable(elems[i], elems[j])) return false;
  return true;
}

bool extends(const Poset& q, const Poset& p) {
  if (q.size() != p.size()) throw std::invalid_argument("extends: ground sets differ");
  for (int v = 0; v < p.size(); ++v) {
    const std::uint64_t* rp = p.closure().row(v);
    const std::uint64_t* rq = q.closure().row(v);
    for (int w = 0; w < p.closure().row_words(); ++w)
      if (rp[w] & ~rq[w]) return false;
  }
  return true;
}

namespace {

// Subset DP state shared per call; masks fit in 32 bits under kBruteLimit.
struct MaskScratch {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  void ensure(std::size_t size) {
    if (stamp.size() < size) stamp.assign(size, 0);
  }
};

std::uint64_t count_downset(std::uint32_t mask, const std::vector<std::uint32_t>& up_strict,
                            std::unordered_map<std::uint32_t, std::uint64_t>& memo) {
  if (mask == 0) return 1;
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  std::uint64_t total = 0;
  // Remove a maximal element of the residual set; sum over the choices.
  std::uint32_t rest = mask;
  while (rest) {
    int v = std::countr_zero(rest);
    rest &= rest - 1;
    if ((up_strict[v] & mask) == 0) total += count_downset(mask & ~(1u << v), up_strict, memo);
  }
  memo.emplace(mask, total);
  return total;
}

}  // namespace

LinearExtensionCount count_linear_extensions(const Poset& p) {
  int n = p.size();
  if (n > kBruteLimit)
    throw OracleLimitError("oracle limit: linear extension counting needs n <= " +
                           std::to_string(kBruteLimit));
  if (n == 0) return {1};
  std::vector<std::uint32_t> up_strict(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (p.less(v, w)) up_strict[v] |= 1u << w;
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  return {count_downset(full, up_strict, memo)};
}

double log2_factorial(int n) {
  double s = 0.0;
  for (int i = 2; i <= n; ++i) s += std::log2(static_cast<double>(i));
  return s;
}

double itlb_bits(const Poset& p) {
  auto e = count_linear_extensions(p);
  return log2_factorial(p.size()) - std::log2(static_cast<double>(e.value));
}

namespace {

struct AntichainDP {
  int n = 0;
  std::vector<std::uint32_t> excl;  // v plus everything comparable with v
  std::vector<double> val;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  const double* w = nullptr;

  double solve(std::uint32_t mask) {
    if (mask == 0) return 0.0;
    if (stamp[mask] == epoch) return val[mask];
    int v = std::countr_zero(mask);
    double best = solve(mask & ~(1u << v));
    double take = w[v] + solve(mask & ~excl[v]);
    if (take > best) best = take;
    stamp[mask] = epoch;
    val[mask] = best;
    return best;
  }

  void reconstruct(std::uint32_t mask, std::vector<int>& out) {
    while (mask) {
      int v = std::countr_zero(mask);
      double with = w[v] + solve(mask & ~excl[v]);
      if (with >= solve(mask & ~(1u << v))) {
        out.push_back(v);
        mask &= ~excl[v];
      } else {
        mask &= ~(1u << v);
      }
    }
  }
};

AntichainDP& antichain_dp_for(const Poset& p) {
  thread_local AntichainDP dp;
  int n = p.size();
  std::size_t need = std::size_t(1) << n;
  if (dp.val.size() < need) {
    dp.val.resize(need);
    dp.stamp.assign(need, 0);
    dp.epoch = 0;
  }
  // The exclusion masks are cheap next to the subset DP; rebuild every call.
  dp.n = n;
  dp.excl.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    dp.excl[v] |= 1u << v;
    for (int w = 0; w < n; ++w)
      if (p.comparable(v, w)) dp.excl[v] |= 1u << w;
  }
  return dp;
}

}  // namespace

std::vector<int> max_antichain_brute(const Poset& p, std::span<const double> weights,
                                     std::uint32_t subset) {
  int n = p.size();
  if (n > kBruteLimit)
    throw OracleLimitError("oracle limit: antichain enumeration needs n <= " +
                           std::to_string(kBruteLimit));
  if (n == 0) return {};
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("max_antichain_brute: weight size mismatch");
  for (double x : weights)
    if (x < 0.0) throw std::invalid_argument("max_antichain_brute: negative weight");
  AntichainDP& dp = antichain_dp_for(p);
  dp.w = weights.data();
  ++dp.epoch;
  if (dp.epoch == 0) {  // stamp wraparound
    std::fill(dp.stamp.begin(), dp.stamp.end(), 0);
    dp.epoch = 1;
  }
  dp.solve(subset);
  std::vector<int> out;
  dp.reconstruct(subset, out);
  return out;
}

std::vector<int> max_antichain_brute(const Poset& p, std::span<const double> weights) {
  std::uint32_t full = p.size() == 0 ? 0 : (p.size() == 32 ? ~0u : (1u << p.size()) - 1);
  return max_antichain_brute(p, weights, full);
}

std::vector<int> max_antichain_brute(const Poset& p) {
  std::vector<double> unit(p.size(), 1.0);
  return max_antichain_brute(p, unit);
}

std::vector<int> max_weight_chain(const Poset& p, std::span<const double> weights) {
  int n = p.size();
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("max_weight_chain: weight size mismatch");
  std::vector<double> dp(n, 0.0);
  std::vector<int> parent(n, -1);
  int best = -1;
  for (int v : p.topo_order()) {
    double acc = 0.0;
    for (int u : p.cover_pred(v)) {
      if (dp[u] > acc) {
        acc = dp[u];
        parent[v] = u;
      }
    }
    dp[v] = acc + weights[v];
    if (best == -1 || dp[v] > dp[best]) best = v;
  }
  std::vector<int> chain;
  for (int v = best; v != -1; v = parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

double chain_weight(std::span<const int> chain, std::span<const double> weights) {
  double s = 0.0;
  for (int v : chain) s += weights[v];
  return s;
}

std::vector<std::int64_t> max_chain_ending_at(const Poset& p,
                                              std::span<const std::int64_t> weights) {
  int n = p.size();
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("max_chain_ending_at: weight size mismatch");
  std::vector<std::int64_t> dp(n, 0);
  for (int v : p.topo_order()) {
    std::int64_t acc = 0;
    for (int u : p.cover_pred(v)) acc = std::max(acc, dp[u]);
    dp[v] = acc + weights[v];
  }
  return dp;
}

WeakOrder WeakOrder::from_layers(int n, std::vector<std::vector<int>> layers) {
  std::vector<char> seen(n, 0);
  int total = 0;
  for (auto& layer : layers) {
    if (layer.empty()) throw std::invalid_argument("weak order: empty layer");
    std::sort(layer.begin(), layer.end());
    for (int v : layer) {
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("weak order: not a partition");
      seen[v] = 1;
      ++total;
    }
  }
  if (total != n) throw std::invalid_argument("weak order: layers do not cover the ground set");
  WeakOrder w;
  w.n = n;
  w.layers = std::move(layers);
  return w;
}

WeakOrder WeakOrder::from_layer_sizes(std::span<const int> sizes) {
  std::vector<std::vector<int>> layers;
  int next = 0;
  for (int s : sizes) {
    std::vector<int> layer(s);
    for (int i = 0; i < s; ++i) layer[i] = next++;
    layers.push_back(std::move(layer));
  }
  return from_layers(next, std::move(layers));
}

std::vector<int> WeakOrder::layer_of() const {
  std::vector<int> out(n, -1);
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (int v : layers[i]) out[v] = static_cast<int>(i);
  return out;
}

std::vector<int> WeakOrder::cut_ranks() const {
  std::vector<int> ranks;
  int acc = 0;
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    acc += static_cast<int>(layers[i].size());
    ranks.push_back(acc);
  }
  return ranks;
}

Poset WeakOrder::to_poset() const {
  BitMatrix up(n);
  std::vector<int> lay = layer_of();
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (v == w || lay[v] < lay[w]) up.set(v, w);
  return Poset::from_closure(std::move(up));
}

double WeakOrder::log2_extension_count() const {
  double s = 0.0;
  for (const auto& layer : layers) s += log2_factorial(static_cast<int>(layer.size()));
  return s;
}

IntervalOrder IntervalOrder::from_endpoints(std::vector<std::int64_t> left,
                                            std::vector<std::int64_t> right, std::int64_t den) {
  if (left.size() != right.size()) throw std::invalid_argument("interval order: size mismatch");
  if (den <= 0) throw std::invalid_argument("interval order: denominator must be positive");
  int n = static_cast<int>(left.size());
  for (int v = 0; v < n; ++v)
    if (!(left[v] < right[v]))
      throw std::invalid_argument("interval order: left endpoint must be below right");
  BitMatrix up(n);
  for (int v = 0; v < n; ++v) {
    up.set(v, v);
    for (int w = 0; w < n; ++w)
      if (v != w && right[v] <= left[w]) up.set(v, w);
  }
  IntervalOrder io;
  io.den = den;
  io.left = std::move(left);
  io.right = std::move(right);
  io.order = Poset::from_closure(std::move(up));
  return io;
}

Poset read_poset(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> pairs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag;
      if (!(ls >> tag)) continue;  // blank or comment before header
      if (tag != "n") throw std::invalid_argument("poset file: expected 'n <count>' header");
      if (!(ls >> n) || n < 0) throw std::invalid_argument("poset file: bad element count");
      continue;
    }
    int v, w;
    if (!(ls >> v)) continue;
    if (!(ls >> w))
      throw std::invalid_argument("poset file: malformed pair on line " + std::to_string(lineno));
    pairs.emplace_back(v, w);
  }
  if (n < 0) throw std::invalid_argument("poset file: missing 'n <count>' header");
  return from_relations(n, pairs);
}

void write_poset(std::ostream& out, const Poset& p) {
  out << "n " << p.size() << "\n";
  for (auto [v, w] : p.covers()) out << v << ' ' << w << "\n";
}

Poset load_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open poset file: " + path);
  return read_poset(in);
}

void save_poset_file(const std::string& path, const Poset& p) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_poset(out, p);
}

}  // namespace pop
