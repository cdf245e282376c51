#include <doctest.h>

#include <random>

#include "pop/flow.hpp"
#include "pop/generators.hpp"
#include "test_util.hpp"

using namespace pop;

namespace {

// Checks the decomposition invariants against the enumeration oracle:
// disjoint cover, every set an antichain, every set maximum in the residual.
void check_decomposition(const Poset& p, const AntichainDecomposition& dec) {
  REQUIRE(p.size() <= 20);
  std::uint32_t residual = p.size() ? (p.size() == 32 ? ~0u : (1u << p.size()) - 1) : 0;
  for (const auto& set : dec.sets) {
    CHECK(p.is_antichain(set));
    CHECK(static_cast<int>(set.size()) ==
          test_util::max_antichain_size_by_enumeration(p, residual));
    for (int v : set) {
      CHECK((residual >> v & 1) == 1);
      residual &= ~(1u << v);
    }
  }
  CHECK(residual == 0);
}

}  // namespace

TEST_CASE("build_network shapes") {
  Network two_chain = build_network(gen_chain(2));
  CHECK(two_chain.node_count() == 6);
  CHECK(two_chain.arcs.size() == 5);

  Network two_anti = build_network(gen_antichain(2));
  CHECK(two_anti.node_count() == 6);
  CHECK(two_anti.arcs.size() == 6);

  Network v = build_network(test_util::v_poset());
  CHECK(v.node_count() == 8);
  CHECK(v.arcs.size() == 8);  // 1 source + 3 element + 2 cover + 2 sink
  for (int e = 0; e < 3; ++e) CHECK(v.arcs[v.element_arc[e]].lower == 1);
  CHECK(v.to_dot().find("digraph") == 0);
}

TEST_CASE("initial flow is feasible with value n") {
  SUBCASE("antichain(2): one unit per element path") {
    Poset p = gen_antichain(2);
    Network net = build_network(p);
    set_initial_flow(net, p);
    CHECK(net.flow_feasible());
    CHECK(net.flow_value() == 2);
    CHECK(net.arcs[net.element_arc[0]].flow == 1);
    CHECK(net.arcs[net.element_arc[1]].flow == 1);
  }
  SUBCASE("chain(2): both units traverse the whole chain") {
    Poset p = gen_chain(2);
    Network net = build_network(p);
    set_initial_flow(net, p);
    CHECK(net.flow_feasible());
    CHECK(net.flow_value() == 2);
    CHECK(net.arcs[net.element_arc[0]].flow == 2);
    CHECK(net.arcs[net.element_arc[1]].flow == 2);
  }
  SUBCASE("v poset: value 3, element arc of the root saturated three times") {
    Poset p = test_util::v_poset();
    Network net = build_network(p);
    set_initial_flow(net, p);
    CHECK(net.flow_feasible());
    CHECK(net.flow_value() == 3);
    CHECK(net.arcs[net.element_arc[0]].flow == 3);
  }
  SUBCASE("corpus: always feasible of value n") {
    for (const auto& item : small_corpus(7, 100)) {
      if (item.poset.size() == 0) continue;
      Network net = build_network(item.poset);
      set_initial_flow(net, item.poset);
      CAPTURE(item.name);
      CHECK(net.flow_feasible());
      CHECK(net.flow_value() == item.poset.size());
    }
  }
}

TEST_CASE("decrementing_reachable") {
  SUBCASE("single element, value-1 flow: only the entry node is open") {
    Poset p = gen_chain(1);
    Network net = build_network(p);
    set_initial_flow(net, p);
    auto y = decrementing_reachable(net);
    CHECK(y[net.source()]);
    CHECK(y[Network::below(0)]);   // source arc sits above its zero lower bound
    CHECK(!y[Network::above(0)]);  // element arc is tight
    CHECK(!y[net.sink()]);
  }
  SUBCASE("antichain(2) extraction cut") {
    Poset p = gen_antichain(2);
    Network net = build_network(p);
    set_initial_flow(net, p);
    auto y = decrementing_reachable(net);
    CHECK(!y[net.sink()]);
    // Both element arcs leave Y at flow 1: the extracted antichain is {0, 1}.
    for (int v = 0; v < 2; ++v) {
      CHECK(y[Network::below(v)]);
      CHECK(!y[Network::above(v)]);
      CHECK(net.arcs[net.element_arc[v]].flow == 1);
    }
  }
  SUBCASE("v poset after decrementing to value 2") {
    Poset p = test_util::v_poset();
    Network net = build_network(p);
    set_initial_flow(net, p);
    AntichainDecomposition dec = greedy_antichain_decomposition(net);
    REQUIRE(dec.sets.size() == 2);
    CHECK(dec.sets[0] == std::vector<int>{1, 2});
    CHECK(dec.sets[1] == std::vector<int>{0});
  }
}

TEST_CASE("greedy decomposition examples") {
  CHECK(greedy_antichain_decomposition(gen_antichain(5)).sets ==
        std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});
  CHECK(greedy_antichain_decomposition(gen_chain(3)).sets ==
        std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(greedy_antichain_decomposition(test_util::v_poset()).sets ==
        std::vector<std::vector<int>>{{1, 2}, {0}});
  CHECK(greedy_antichain_decomposition(test_util::n_poset()).sets ==
        std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("every extracted set is a maximum antichain of the residual") {
  for (const auto& item : small_corpus(7, 150)) {
    CAPTURE(item.name);
    auto dec = greedy_antichain_decomposition(item.poset);
    check_decomposition(item.poset, dec);
    CHECK(dec.loop_iterations <= 2 * item.poset.size() - 1);
  }
  for (std::uint64_t s = 1; s <= 12; ++s) {
    Poset p = gen_random(12, 0.2 + 0.05 * static_cast<double>(s % 5), s);
    auto dec = greedy_antichain_decomposition(p);
    check_decomposition(p, dec);
    CHECK(dec.loop_iterations <= 2 * p.size() - 1);
  }
}

TEST_CASE("decomposition scales past the brute-force limit") {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    Poset p = gen_random(300, 0.02 * static_cast<double>(s), s * 1009);
    auto dec = greedy_antichain_decomposition(p);
    CHECK(dec.loop_iterations <= 2 * p.size() - 1);
    std::vector<char> seen(p.size(), 0);
    for (const auto& set : dec.sets) {
      CHECK(p.is_antichain(set));
      for (int v : set) {
        CHECK(!seen[v]);
        seen[v] = 1;
      }
    }
    CHECK(std::count(seen.begin(), seen.end(), char(1)) == p.size());
    // Longest chain length L: at least L antichains are needed, and some
    // antichain must hold at least n/L elements, so the greedy first set does.
    std::vector<double> unit(p.size(), 1.0);
    std::size_t longest = max_weight_chain(p, unit).size();
    CHECK(dec.sets.size() >= longest);
    CHECK(dec.sets[0].size() * longest >= static_cast<std::size_t>(p.size()));
    // Sizes never increase: each set is maximum in a shrinking residual.
    for (std::size_t i = 1; i < dec.sets.size(); ++i)
      CHECK(dec.sets[i].size() <= dec.sets[i - 1].size());
  }
}

TEST_CASE("decomposition is valid from any feasible initial flow") {
  std::mt19937_64 rng(7);
  for (const auto& item : small_corpus(7, 80)) {
    if (item.poset.size() == 0) continue;
    Network net = build_network(item.poset);
    set_initial_flow(net, item.poset, rng);
    REQUIRE(net.flow_feasible());
    auto dec = greedy_antichain_decomposition(net);
    CAPTURE(item.name);
    check_decomposition(item.poset, dec);
  }
}
