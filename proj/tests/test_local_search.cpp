#include <doctest.h>

#include <random>

#include "dynk/errors.hpp"
#include "dynk/local_search.hpp"
#include "dynk/numeric.hpp"
#include "dynk/objective.hpp"
#include "dynk/oracles.hpp"
#include "test_support.hpp"

using namespace dynk;

namespace {

// Naive swap evaluation: recomputes cl(S + x - y)^p from scratch for every y.
BestSwapResult naive_best_swap(const WeightedMetricSpace& s, const CenterSet& set, PointId x,
                               int p) {
  CenterSet splus = set;
  splus.insert(x);
  BestSwapResult best{x, unnormalized_cost(s, set, p)};  // removing x = keeping S
  for (PointId y : splus) {
    CenterSet cand = splus;
    cand.erase(y);
    double c = unnormalized_cost(s, cand, p);
    if (c < best.cost_p || (c == best.cost_p && y < best.removed)) best = {y, c};
  }
  return best;
}

}  // namespace

TEST_CASE("best swap on the line space breaks the tie to the smaller id") {
  auto s = testing::line_space();
  CenterSet set = {0, 2};
  auto nl = NeighborLists::build(s, set);
  auto r = best_swap(s, set, 1, nl, 1);
  CHECK(r.removed == 0);  // removing a or b both reach cost 1
  CHECK(r.cost_p == doctest::Approx(1.0));
  CHECK(nl.candidates() == set);  // restored
}

TEST_CASE("best swap rejects mismatched lists") {
  auto s = testing::line_space();
  auto nl = NeighborLists::build(s, {0});
  CHECK_THROWS_AS(best_swap(s, {0, 2}, 1, nl, 1), Error);
  auto nl2 = NeighborLists::build(s, {0, 2});
  CHECK_THROWS_AS(best_swap(s, {0, 2}, 0, nl2, 1), Error);  // x already in S
}

TEST_CASE("a dominated candidate makes the no-op swap optimal") {
  WeightedMetricSpace s;
  s.insert(0, 1.0, {0.0});
  s.insert(1, 1.0, {0.4});
  s.insert(2, 1.0, {10.0});
  s.insert(3, 1.0, {10.4});
  s.insert(4, 1.0, {100.0});
  s.erase(4);  // deleted, so it serves nobody, but stays a legal candidate
  CenterSet set = {0, 2};
  auto nl = NeighborLists::build(s, set);
  auto r = best_swap(s, set, 4, nl, 1);
  CHECK(r.removed == 4);
  CHECK(r.cost_p == doctest::Approx(unnormalized_cost(s, set, 1)));
}

TEST_CASE("best swap agrees with the naive evaluation on random instances") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 6 + rng() % 10;
    auto s = testing::random_space(rng, n, 0.5, 2.0);
    int k = 1 + static_cast<int>(rng() % 4);
    CenterSet set = testing::random_subset(rng, s.live_ids(), static_cast<std::size_t>(k));
    PointId x = -1;
    for (PointId id : s.live_ids())
      if (!set.count(id)) {
        x = id;
        break;
      }
    REQUIRE(x >= 0);
    auto nl = NeighborLists::build(s, set);
    for (int p : {1, 2}) {
      auto fast = best_swap(s, set, x, nl, p);
      auto slow = naive_best_swap(s, set, x, p);
      CHECK(fast.removed == slow.removed);
      CHECK(fast.cost_p == doctest::Approx(slow.cost_p).epsilon(1e-9));
    }
  }
}

TEST_CASE("local search returns X when it is small enough") {
  auto s = testing::line_space();
  CenterSet x = {0, 1};
  auto nl = NeighborLists::build(s, x);
  LocalSearchParams params;
  CHECK(randomized_local_search(s, x, 2, params, nl) == x);
  CHECK(randomized_local_search(s, x, 5, params, nl) == x);
}

TEST_CASE("local search on the line space always lands on the cost-1 optimum") {
  auto s = testing::line_space();
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 99ULL}) {
    auto nl = NeighborLists::build(s, s.live_ids());
    LocalSearchParams params;
    params.seed = seed;
    CenterSet out = randomized_local_search(s, s.live_ids(), 2, params, nl);
    CHECK(out.size() == 2);
    CHECK(clustering_cost(s, out, 1) == doctest::Approx(1.0));
    CHECK(nl.candidates() == s.live_ids());  // restored to X
  }
}

TEST_CASE("local search output is deterministic in the seed") {
  std::mt19937_64 rng(32);
  auto s = testing::random_space(rng, 14, 0.5, 2.0);
  auto x = s.live_ids();
  LocalSearchParams params;
  params.seed = 777;
  auto nl1 = NeighborLists::build(s, x);
  auto out1 = randomized_local_search(s, x, 4, params, nl1);
  auto nl2 = NeighborLists::build(s, x);
  auto out2 = randomized_local_search(s, x, 4, params, nl2);
  CHECK(out1 == out2);
  CHECK(out1.size() == 4);
}

TEST_CASE("local search respects the iteration override") {
  std::mt19937_64 rng(33);
  auto s = testing::random_space(rng, 10);
  LocalSearchParams params;
  params.max_iters_override = 0;
  auto nl = NeighborLists::build(s, s.live_ids());
  auto out = randomized_local_search(s, s.live_ids(), 3, params, nl);
  CHECK(out.size() == 3);  // initial set, no iterations
}

TEST_CASE("restricted search meets the approximation bound on most seeds") {
  std::mt19937_64 rng(34);
  int ok = 0;
  const int runs = 40;
  for (int rep = 0; rep < runs; ++rep) {
    auto s = testing::random_space(rng, 12);
    CenterSet x = testing::random_subset(rng, s.live_ids(), 8);
    int k = 3, p = 1;
    LocalSearchParams params;
    params.p = p;
    params.epsilon = 0.2;
    params.seed = rng();
    auto nl = NeighborLists::build(s, x);
    auto out = randomized_local_search(s, x, k, params, nl);
    double opt = brute_opt_clustering(s, k, p).cost;
    double bound = (1.0 + 7.0 * params.epsilon) *
                   (clustering_cost(s, x, p) + 6.0 * p * opt);
    if (clustering_cost(s, out, p) <= bound + kAbsTol) ++ok;
  }
  CHECK(ok >= runs * 95 / 100);
}

TEST_CASE("iteration budget formula") {
  LocalSearchParams params;
  params.p = 1;
  params.epsilon = 0.5;
  params.confidence = 1.0;
  // 2 * 1 * 1 * s * ln(n) * ln(n * delta / eps) / eps^2
  std::uint64_t got = local_search_iteration_budget(8, 2.0, 6, 4, params);
  double expect = std::ceil(2.0 * 2.0 * std::log(8.0) * std::log(8.0 * 2.0 / 0.5) / 0.25);
  CHECK(got == static_cast<std::uint64_t>(expect));
  CHECK(local_search_iteration_budget(8, 2.0, 4, 4, params) == 0);
}
