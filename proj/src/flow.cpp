#include "pop/flow.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace pop {

namespace {

// Combined adjacency used by the decrementing traversal: per node, the
// neighbours reachable in one step (forward or backward arc), sorted by
// neighbour id so the DFS is deterministic.
struct Step {
  int nbr;
  int arc;
  bool forward;
  bool operator<(const Step& o) const {
    return nbr != o.nbr ? nbr < o.nbr : (arc != o.arc ? arc < o.arc : forward < o.forward);
  }
};

std::vector<std::vector<Step>> combined_adjacency(const Network& net) {
  std::vector<std::vector<Step>> adj(net.node_count());
  for (int id = 0; id < static_cast<int>(net.arcs.size()); ++id) {
    const auto& a = net.arcs[id];
    adj[a.from].push_back({a.to, id, true});
    adj[a.to].push_back({a.from, id, false});
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

// DFS over usable steps, descending into the smallest neighbour first; fills
// visited and, when parents is non-null, the (arc, forward) step that first
// reached each node.
void reach(const Network& net, const std::vector<std::vector<Step>>& adj,
           std::vector<char>& visited, std::vector<std::pair<int, bool>>* parents,
           bool stop_at_sink = false) {
  visited.assign(net.node_count(), 0);
  if (parents) parents->assign(net.node_count(), {-1, true});
  std::vector<std::pair<int, std::size_t>> stack;
  stack.emplace_back(net.source(), 0);
  visited[net.source()] = 1;
  while (!stack.empty()) {
    auto& [u, idx] = stack.back();
    if (idx >= adj[u].size()) {
      stack.pop_back();
      continue;
    }
    const Step st = adj[u][idx++];
    if (visited[st.nbr]) continue;
    const auto& a = net.arcs[st.arc];
    if (st.forward && a.flow <= a.lower) continue;
    visited[st.nbr] = 1;
    if (parents) (*parents)[st.nbr] = {st.arc, st.forward};
    if (stop_at_sink && st.nbr == net.sink()) return;
    stack.emplace_back(st.nbr, 0);
  }
}

}  // namespace

int Network::arc_between(int from, int to) const {
  for (int id : out[from])
    if (arcs[id].to == to) return id;
  return -1;
}

int Network::flow_value() const {
  int v = 0;
  for (int id : out[source()]) v += arcs[id].flow;
  return v;
}

bool Network::flow_feasible() const {
  for (const auto& a : arcs)
    if (a.flow < a.lower) return false;
  std::vector<int> balance(node_count(), 0);
  for (const auto& a : arcs) {
    balance[a.from] -= a.flow;
    balance[a.to] += a.flow;
  }
  for (int u = 0; u < node_count(); ++u)
    if (u != source() && u != sink() && balance[u] != 0) return false;
  return true;
}

std::string Network::to_dot() const {
  std::ostringstream os;
  os << "digraph D {\n";
  auto name = [&](int u) -> std::string {
    if (u == source()) return "s";
    if (u == sink()) return "t";
    return std::to_string(u / 2) + (u % 2 ? "+" : "-");
  };
  for (const auto& a : arcs)
    os << "  \"" << name(a.from) << "\" -> \"" << name(a.to) << "\" [label=\"l=" << a.lower
       << " f=" << a.flow << "\"];\n";
  os << "}\n";
  return os.str();
}

Network build_network(const Poset& p) {
  Network net;
  net.n = p.size();
  net.out.assign(net.node_count(), {});
  net.in.assign(net.node_count(), {});
  net.element_arc.assign(net.n, -1);
  auto add_arc = [&](int from, int to, int lower) {
    int id = static_cast<int>(net.arcs.size());
    net.arcs.push_back({from, to, lower, 0});
    net.out[from].push_back(id);
    net.in[to].push_back(id);
    return id;
  };
  for (int v = 0; v < net.n; ++v)
    if (p.is_minimal(v)) add_arc(net.source(), Network::below(v), 0);
  for (int v = 0; v < net.n; ++v) net.element_arc[v] = add_arc(Network::below(v), Network::above(v), 1);
  for (auto [v, w] : p.covers()) add_arc(Network::above(v), Network::below(w), 0);
  for (int v = 0; v < net.n; ++v)
    if (p.is_maximal(v)) add_arc(Network::above(v), net.sink(), 0);
  return net;
}

namespace {

template <typename PickPred, typename PickSucc>
void route_chains(Network& net, const Poset& p, PickPred pick_pred, PickSucc pick_succ) {
  for (auto& a : net.arcs) a.flow = 0;
  for (int v = 0; v < p.size(); ++v) {
    // Maximal chain through v, grown downward then upward by cover steps.
    std::vector<int> chain{v};
    for (int u = v; !p.is_minimal(u);) {
      u = pick_pred(u);
      chain.push_back(u);
    }
    std::reverse(chain.begin(), chain.end());
    for (int u = v; !p.is_maximal(u);) {
      u = pick_succ(u);
      chain.push_back(u);
    }
    auto bump = [&](int from, int to) {
      int id = net.arc_between(from, to);
      assert(id >= 0);
      ++net.arcs[id].flow;
    };
    bump(net.source(), Network::below(chain.front()));
    for (std::size_t i = 0; i < chain.size(); ++i) {
      bump(Network::below(chain[i]), Network::above(chain[i]));
      if (i + 1 < chain.size()) bump(Network::above(chain[i]), Network::below(chain[i + 1]));
    }
    bump(Network::above(chain.back()), net.sink());
  }
}

}  // namespace

void set_initial_flow(Network& net, const Poset& p) {
  route_chains(
      net, p, [&](int u) { return p.cover_pred(u).front(); },
      [&](int u) { return p.cover_succ(u).front(); });
}

void set_initial_flow(Network& net, const Poset& p, std::mt19937_64& rng) {
  auto pick = [&rng](const std::vector<int>& opts) {
    return opts[rng() % opts.size()];
  };
  route_chains(
      net, p, [&](int u) { return pick(p.cover_pred(u)); },
      [&](int u) { return pick(p.cover_succ(u)); });
}

std::vector<char> decrementing_reachable(const Network& net) {
  std::vector<char> visited;
  auto adj = combined_adjacency(net);
  reach(net, adj, visited, nullptr);
  return visited;
}

std::vector<int> AntichainDecomposition::set_of(int n) const {
  std::vector<int> idx(n, -1);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int v : sets[i]) idx[v] = static_cast<int>(i);
  return idx;
}

std::vector<int> AntichainDecomposition::sizes() const {
  std::vector<int> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(static_cast<int>(s.size()));
  return out;
}

AntichainDecomposition greedy_antichain_decomposition(Network& net) {
  AntichainDecomposition dec;
  const int n = net.n;
  if (n == 0) return dec;
  auto adj = combined_adjacency(net);
  std::vector<char> visited;
  std::vector<std::pair<int, bool>> parents;
  int extracted = 0;
  while (extracted < n) {
    // Every pass either lowers the flow value by one or extracts a set, so the
    // loop runs at most 2n-1 times.
    if (++dec.loop_iterations > 2 * n - 1)
      throw std::logic_error("antichain decomposition failed to terminate");
    reach(net, adj, visited, &parents, /*stop_at_sink=*/true);
    if (visited[net.sink()]) {
      // Walk the stored steps back from t and push one unit of anti-flow.
      for (int u = net.sink(); u != net.source();) {
        auto [arc, forward] = parents[u];
        net.arcs[arc].flow += forward ? -1 : 1;
        u = forward ? net.arcs[arc].from : net.arcs[arc].to;
      }
      continue;
    }
    std::vector<int> antichain;
    for (int v = 0; v < n; ++v) {
      const auto& a = net.arcs[net.element_arc[v]];
      if (visited[a.from] && !visited[a.to] && a.flow == 1) antichain.push_back(v);
    }
    // The blocked flow value is exactly the size of the extracted antichain.
    if (antichain.empty() || net.flow_value() != static_cast<int>(antichain.size()))
      throw std::logic_error("antichain extraction does not match the flow value");
    for (int v : antichain) net.arcs[net.element_arc[v]].lower = 0;
    extracted += static_cast<int>(antichain.size());
    dec.sets.push_back(std::move(antichain));
  }
  return dec;
}

AntichainDecomposition greedy_antichain_decomposition(const Poset& p) {
  Network net = build_network(p);
  set_initial_flow(net, p);
  return greedy_antichain_decomposition(net);
}

}  // namespace pop
