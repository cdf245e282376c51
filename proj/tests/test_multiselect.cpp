#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "pop/generators.hpp"
#include "pop/multiselect.hpp"
#include "test_util.hpp"

using namespace pop;

namespace {

// Blocks must hold the hidden ranks in consecutive runs.
void check_blocks(const MultiselectResult& res, const std::vector<int>& hidden) {
  auto blocks = res.blocks();
  int next_rank = 0;
  for (const auto& block : blocks) {
    std::vector<int> ranks;
    for (int t : block) ranks.push_back(hidden[t]);
    std::sort(ranks.begin(), ranks.end());
    for (int r : ranks) CHECK(r == next_rank++);
  }
  CHECK(next_rank == static_cast<int>(hidden.size()));
}

std::int64_t run_cost(int n, std::uint64_t hidden_seed, const std::vector<int>& ranks,
                      PivotMode mode, std::uint64_t pivot_seed) {
  ComparisonOracle oracle = ComparisonOracle::from_seed(n, hidden_seed);
  multiselect(oracle, ranks, mode, pivot_seed);
  return oracle.count();
}

}  // namespace

TEST_CASE("oracle counts distinct pairs once") {
  ComparisonOracle oracle({2, 0, 1});
  CHECK(oracle.less_eq(1, 0));   // rank 0 vs 2
  CHECK(!oracle.less_eq(0, 1));  // same pair reversed: memoized
  CHECK(oracle.count() == 1);
  CHECK(oracle.memo_hits() == 1);
  CHECK(oracle.less_eq(2, 2));
  CHECK(oracle.count() == 1);  // self comparisons are free
  CHECK(oracle.less_eq(2, 0));
  CHECK(oracle.count() == 2);
  CHECK_THROWS_AS(oracle.less_eq(0, 9), std::invalid_argument);
  CHECK_THROWS_AS(ComparisonOracle({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("oracle answers stay consistent with one total order") {
  ComparisonOracle oracle = ComparisonOracle::from_seed(12, 99);
  const auto& rank = oracle.hidden_ranks();
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) CHECK(oracle.less_eq(i, j) == (rank[i] <= rank[j]));
}

TEST_CASE("multiselect examples") {
  SUBCASE("no ranks: single block, zero comparisons") {
    ComparisonOracle oracle = ComparisonOracle::from_seed(8, 3);
    MultiselectResult res = multiselect(oracle, {});
    CHECK(oracle.count() == 0);
    CHECK(res.blocks().size() == 1);
    CHECK(res.blocks()[0].size() == 8);
  }
  SUBCASE("full sort of 3: worst case hits the sorting bound, all answers correct") {
    std::int64_t worst = 0;
    double total = 0;
    std::vector<int> hidden{0, 1, 2};
    do {
      ComparisonOracle oracle(hidden);
      MultiselectResult res = multiselect(oracle, {1, 2});
      check_blocks(res, hidden);
      worst = std::max(worst, oracle.count());
      total += static_cast<double>(oracle.count());
    } while (std::next_permutation(hidden.begin(), hidden.end()));
    CHECK(worst >= 3);              // ceil(log2 3!)
    CHECK(total / 6.0 >= std::log2(6.0));  // expected cost floor over all inputs
  }
  SUBCASE("median layers (2,1,2) on 5 elements") {
    std::int64_t worst = 0;
    double total = 0;
    std::vector<int> hidden{0, 1, 2, 3, 4};
    do {
      ComparisonOracle oracle(hidden);
      MultiselectResult res = multiselect(oracle, {2, 3});
      check_blocks(res, hidden);
      worst = std::max(worst, oracle.count());
      total += static_cast<double>(oracle.count());
    } while (std::next_permutation(hidden.begin(), hidden.end()));
    CHECK(worst >= 5);                       // ceil(log2 30)
    CHECK(total / 120.0 >= std::log2(30.0));  // 30 = 5! / (2! 1! 2!)
  }
  SUBCASE("rank bounds") {
    ComparisonOracle oracle = ComparisonOracle::from_seed(4, 1);
    CHECK_THROWS_AS(multiselect(oracle, {0}), std::invalid_argument);
    CHECK_THROWS_AS(multiselect(oracle, {4}), std::invalid_argument);
    CHECK_THROWS_AS(multiselect(oracle, {2, 2}), std::invalid_argument);
  }
}

TEST_CASE("multiselect separates blocks for both pivot modes") {
  for (PivotMode mode : {PivotMode::seeded_random, PivotMode::median_of_medians}) {
    for (std::uint64_t s = 1; s <= 6; ++s) {
      ComparisonOracle oracle = ComparisonOracle::from_seed(40, s);
      MultiselectResult res = multiselect(oracle, {5, 13, 14, 30}, mode, s);
      check_blocks(res, oracle.hidden_ranks());
    }
  }
}

TEST_CASE("cost is monotone in the rank set under a fixed seed") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    int n = 20 + static_cast<int>(rng() % 30);
    std::vector<int> all(n - 1);
    std::iota(all.begin(), all.end(), 1);
    for (int i = n - 2; i > 0; --i)
      std::swap(all[i], all[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
    int big = 2 + static_cast<int>(rng() % 8);
    std::vector<int> sup(all.begin(), all.begin() + big);
    std::vector<int> sub(sup.begin(), sup.begin() + 1 + static_cast<int>(rng() % (big - 1)));
    std::uint64_t hidden_seed = rng(), pivot_seed = rng();
    for (PivotMode mode : {PivotMode::seeded_random, PivotMode::median_of_medians}) {
      std::int64_t small_cost = run_cost(n, hidden_seed, sub, mode, pivot_seed);
      std::int64_t big_cost = run_cost(n, hidden_seed, sup, mode, pivot_seed);
      CHECK(small_cost <= big_cost);
    }
  }
}

TEST_CASE("produce examples") {
  SUBCASE("antichain: no comparisons") {
    ComparisonOracle oracle = ComparisonOracle::from_seed(9, 4);
    Production prod = produce(gen_antichain(9), oracle);
    CHECK(prod.comparisons == 0);
    CHECK(verify_production(gen_antichain(9), oracle.hidden_ranks(), prod.pi));
  }
  SUBCASE("chain(3): always sorts, all 6 hidden orders") {
    Poset chain = gen_chain(3);
    std::vector<int> hidden{0, 1, 2};
    do {
      ComparisonOracle oracle(hidden);
      Production prod = produce(chain, oracle);
      CHECK(verify_production(chain, hidden, prod.pi));
      for (int i = 0; i + 1 < 3; ++i) CHECK(hidden[prod.pi[i]] < hidden[prod.pi[i + 1]]);
    } while (std::next_permutation(hidden.begin(), hidden.end()));
  }
  SUBCASE("v poset: the hidden minimum lands on the root") {
    Poset v = test_util::v_poset();
    std::vector<int> hidden{0, 1, 2};
    do {
      ComparisonOracle oracle(hidden);
      Production prod = produce(v, oracle);
      CHECK(verify_production(v, hidden, prod.pi));
      CHECK(hidden[prod.pi[0]] == 0);
    } while (std::next_permutation(hidden.begin(), hidden.end()));
  }
}

namespace {

void exhaustive_produce_check(const Poset& p) {
  int n = p.size();
  GreedyExtension ext = greedy_weak_extension(p);
  std::vector<int> hidden(n);
  std::iota(hidden.begin(), hidden.end(), 0);
  do {
    ComparisonOracle oracle(hidden);
    Production prod = produce(ext, oracle);
    CHECK(verify_production(p, hidden, prod.pi));
  } while (std::next_permutation(hidden.begin(), hidden.end()));
}

}  // namespace

TEST_CASE("produce is sound for every small poset and hidden order") {
  for (const auto& item : small_corpus(6, 100)) {
    if (item.poset.size() == 0) continue;
    CAPTURE(item.name);
    exhaustive_produce_check(item.poset);
  }
  // One size-7 instance exhaustively; the acceptance suite samples the rest.
  exhaustive_produce_check(gen_heap(3));
}

TEST_CASE("produce handles degenerate sizes") {
  ComparisonOracle empty({});
  Production p0 = produce(gen_antichain(0), empty);
  CHECK(p0.pi.empty());
  CHECK(p0.comparisons == 0);

  ComparisonOracle one({0});
  Production p1 = produce(gen_chain(1), one);
  CHECK(p1.pi == std::vector<int>{0});
  CHECK(p1.comparisons == 0);
}

TEST_CASE("verify_production checks the implication directly") {
  Poset chain = gen_chain(2);
  CHECK(verify_production(chain, {0, 1}, {0, 1}));
  CHECK(!verify_production(chain, {1, 0}, {0, 1}));
  CHECK(verify_production(chain, {1, 0}, {1, 0}));
  CHECK(verify_production(gen_antichain(2), {1, 0}, {0, 1}));
  CHECK(!verify_production(gen_antichain(2), {1, 0}, {0, 0}));  // not a permutation
}

TEST_CASE("produce at moderate scale stays sound") {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    Poset p = gen_random(300, 0.03, s * 7 + 1);
    GreedyExtension ext = greedy_weak_extension(p);
    for (std::uint64_t hs = 1; hs <= 2; ++hs) {
      ComparisonOracle oracle = ComparisonOracle::from_seed(p.size(), hs * 131);
      Production prod = produce(ext, oracle, PivotMode::seeded_random, hs);
      CHECK(verify_production(p, oracle.hidden_ranks(), prod.pi));
      CHECK(prod.comparisons <= 40L * p.size());
    }
  }
}

TEST_CASE("mom pivot mode stays linear-ish on adversarial input") {
  // Already-sorted hidden order, full sort requested: the deterministic pivot
  // must keep the recursion balanced.
  int n = 512;
  std::vector<int> hidden(n);
  std::iota(hidden.begin(), hidden.end(), 0);
  ComparisonOracle oracle(hidden);
  std::vector<int> ranks(n - 1);
  std::iota(ranks.begin(), ranks.end(), 1);
  multiselect(oracle, ranks, PivotMode::median_of_medians);
  CHECK(oracle.count() <= 40 * n);  // far below the quadratic blowup
}
