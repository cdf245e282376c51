#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pop/entropy.hpp"
#include "pop/extension.hpp"
#include "pop/generators.hpp"
#include "test_util.hpp"

using namespace pop;

TEST_CASE("greedy_point examples") {
  SUBCASE("antichain: single set, zero entropy") {
    auto dec = greedy_antichain_decomposition(gen_antichain(5));
    StabPoint x = greedy_point(dec, 5);
    for (auto v : x.num) CHECK(v == 5);
    CHECK(x.entropy_bits == doctest::Approx(0.0));
  }
  SUBCASE("chain(2): two singletons") {
    auto dec = greedy_antichain_decomposition(gen_chain(2));
    StabPoint x = greedy_point(dec, 2);
    CHECK(x.values() == std::vector<double>{0.5, 0.5});
    CHECK(x.entropy_bits == doctest::Approx(1.0));
  }
  SUBCASE("v poset: sizes (2,1)") {
    auto dec = greedy_antichain_decomposition(test_util::v_poset());
    StabPoint x = greedy_point(dec, 3);
    CHECK(x.num == std::vector<std::int64_t>{1, 2, 2});
    CHECK(x.den == 3);
    CHECK(x.entropy_bits == doctest::Approx(std::log2(3.0) - 2.0 / 3.0));
  }
}

TEST_CASE("potential_from_point examples") {
  SUBCASE("antichain(2) at the all-ones point") {
    StabPoint x = StabPoint::from_rationals({1, 1}, 1);
    Potential y = potential_from_point(gen_antichain(2), x);
    CHECK(y.below == std::vector<std::int64_t>{0, 0});
    CHECK(y.above == std::vector<std::int64_t>{1, 1});
  }
  SUBCASE("chain(2) at (1/2, 1/2): cumulative sums") {
    StabPoint x = StabPoint::from_rationals({1, 1}, 2);
    Potential y = potential_from_point(gen_chain(2), x);
    CHECK(y.below == std::vector<std::int64_t>{0, 1});
    CHECK(y.above == std::vector<std::int64_t>{1, 2});
  }
  SUBCASE("v poset at the greedy point") {
    StabPoint x = StabPoint::from_rationals({1, 2, 2}, 3);
    Potential y = potential_from_point(test_util::v_poset(), x);
    CHECK(y.below == std::vector<std::int64_t>{0, 1, 1});
    CHECK(y.above == std::vector<std::int64_t>{1, 3, 3});
  }
}

TEST_CASE("potential certifies membership exactly") {
  // Feasible greedy points succeed and the labelling is monotone on arcs.
  for (const auto& item : small_corpus(7, 80)) {
    if (item.poset.size() == 0) continue;
    auto dec = greedy_antichain_decomposition(item.poset);
    StabPoint x = greedy_point(dec, item.poset.size());
    Potential y = potential_from_point(item.poset, x);
    CAPTURE(item.name);
    for (int v = 0; v < item.poset.size(); ++v) {
      CHECK(y.below[v] >= 0);
      CHECK(y.above[v] <= y.den);
      CHECK(y.above[v] - y.below[v] == x.num[v]);
      for (int w : item.poset.cover_succ(v)) CHECK(y.above[v] <= y.below[w]);
    }
    // Doubling every coordinate breaks some chain inequality.
    StabPoint bad;
    bad.den = x.den;
    bad.num = x.num;
    for (auto& v : bad.num) v *= 2;
    CHECK_THROWS_AS(potential_from_point(item.poset, bad), StabMembershipError);
  }
}

TEST_CASE("membership certificate succeeds exactly on polytope points") {
  std::mt19937_64 rng(31);
  for (const auto& item : small_corpus(6, 60)) {
    int n = item.poset.size();
    if (n == 0) continue;
    for (int round = 0; round < 6; ++round) {
      const std::int64_t den = 8;
      std::vector<std::int64_t> num(n);
      for (auto& v : num) v = 1 + static_cast<std::int64_t>(rng() % den);
      auto chain_max = max_chain_ending_at(item.poset, num);
      bool inside = *std::max_element(chain_max.begin(), chain_max.end()) <= den;
      StabPoint x;
      x.den = den;
      x.num = num;
      if (inside) {
        Potential y = potential_from_point(item.poset, x);
        for (int v = 0; v < n; ++v) CHECK(y.above[v] - y.below[v] == num[v]);
      } else {
        CHECK_THROWS_AS(potential_from_point(item.poset, x), StabMembershipError);
      }
    }
  }
}

TEST_CASE("entropy_exact on the one-edge example") {
  Poset p = from_relations(3, {{1, 2}});
  EntropyOptions opts;
  opts.tol_bits = 1e-6;
  opts.record_trace = true;
  EntropyResult res = entropy_exact(p, EntropyMode::comparability, opts);
  CHECK(res.converged);
  CHECK(res.value_bits == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  CHECK(std::fabs(res.x[0] - 1.0) <= 1e-2);
  CHECK(std::fabs(res.x[1] - 0.5) <= 1e-2);
  CHECK(std::fabs(res.x[2] - 0.5) <= 1e-2);
  for (std::size_t i = 1; i < res.trace_bits.size(); ++i)
    CHECK(res.trace_bits[i] <= res.trace_bits[i - 1] + 1e-12);
}

TEST_CASE("entropy_exact on chains and the v poset") {
  for (int n : {2, 3, 5, 8}) {
    EntropyResult res = entropy_exact(gen_chain(n), EntropyMode::comparability);
    CHECK(res.value_bits == doctest::Approx(std::log2(n)).epsilon(1e-3));
  }
  EntropyResult v = entropy_exact(test_util::v_poset(), EntropyMode::comparability);
  CHECK(v.value_bits == doctest::Approx(std::log2(3.0) - 2.0 / 3.0).epsilon(1e-3));
  EntropyResult empty = entropy_exact(gen_antichain(4), EntropyMode::comparability);
  CHECK(empty.value_bits == doctest::Approx(0.0));
}

TEST_CASE("entropy_exact limits and non-convergence reporting") {
  CHECK_THROWS_AS(entropy_exact(gen_antichain(kBruteLimit + 1), EntropyMode::comparability),
                  OracleLimitError);
  // The complement oracle is polynomial, so no limit applies there.
  CHECK(entropy_exact(gen_antichain(kBruteLimit + 1), EntropyMode::complement).converged);

  EntropyOptions strangled;
  strangled.max_iters = 1;
  strangled.tol_bits = 1e-12;
  EntropyResult res = entropy_exact(from_relations(3, {{1, 2}}), EntropyMode::comparability,
                                    strangled);
  CHECK(!res.converged);
  CHECK(res.gap_bits > 1e-12);
  CHECK(res.value_bits >= 2.0 / 3.0 - 1e-9);  // still an upper bound

  CHECK(entropy_exact(gen_antichain(0), EntropyMode::comparability).converged);
}

TEST_CASE("complement entropy pairs with comparability entropy") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    int n = 4 + static_cast<int>(s);
    Poset p = gen_random(n, 0.1 * static_cast<double>(s % 4 + 1), s);
    auto a = entropy_exact(p, EntropyMode::comparability);
    auto b = entropy_exact(p, EntropyMode::complement);
    CAPTURE(n);
    CHECK(std::fabs(a.value_bits + b.value_bits - std::log2(n)) <= 2e-3);
  }
}

TEST_CASE("greedy point entropy obeys the proof-constant bounds") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    int n = 4 + static_cast<int>(s % 11);
    Poset p = gen_random(n, 0.15 * static_cast<double>(s % 5 + 1), s * 77 + 1);
    double g = greedy_point(greedy_antichain_decomposition(p), n).entropy_bits;
    double h = entropy_exact(p, EntropyMode::comparability).value_bits;
    for (double delta : {0.25, 0.5, 0.75})
      CHECK(g <= (h + std::log2(1.0 / delta)) / (1.0 - delta) + 1e-6);
    CHECK(g <= h + std::log2(h + 1.0) + 3.0 + 1e-6);
  }
}

TEST_CASE("extension count sandwich") {
  for (const auto& item : small_corpus(7, 120)) {
    int n = item.poset.size();
    if (n == 0 || n > 10) continue;
    double h = entropy_exact(item.poset, EntropyMode::comparability).value_bits;
    double diff = std::log2(static_cast<double>(count_linear_extensions(item.poset).value)) -
                  log2_factorial(n);
    CAPTURE(item.name);
    CHECK(-n * h <= diff + 1e-9);
    CHECK(diff <= n * std::log2(static_cast<double>(n)) - log2_factorial(n) - n * h + 1e-3);
  }
}

TEST_CASE("coloring entropy") {
  CHECK(coloring_entropy_bits({{0, 1, 2}}, 3) == doctest::Approx(0.0));
  CHECK(coloring_entropy_bits({{0}, {1}, {2}, {3}}, 4) == doctest::Approx(2.0));
  CHECK_THROWS_AS(coloring_entropy_bits({{0}, {0, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(coloring_entropy_bits({{0}}, 2), std::invalid_argument);
}

TEST_CASE("weak order entropy") {
  CHECK(weak_order_entropy_bits(WeakOrder::from_layer_sizes(std::vector<int>{4})) ==
        doctest::Approx(0.0));
  CHECK(weak_order_entropy_bits(WeakOrder::from_layer_sizes(std::vector<int>{1, 1, 1, 1})) ==
        doctest::Approx(2.0));
  WeakOrder w = WeakOrder::from_layer_sizes(std::vector<int>{2, 1, 2});
  double expect = 2 * (2.0 / 5.0) * std::log2(5.0 / 2.0) + (1.0 / 5.0) * std::log2(5.0);
  CHECK(weak_order_entropy_bits(w) == doctest::Approx(expect));
  CHECK(expect == doctest::Approx(1.5219).epsilon(1e-4));
  // Matches the exact entropy of the induced poset.
  EntropyResult res = entropy_exact(w.to_poset(), EntropyMode::comparability);
  CHECK(res.value_bits == doctest::Approx(expect).epsilon(1e-3));
}
