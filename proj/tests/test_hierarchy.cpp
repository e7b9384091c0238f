#include <doctest.h>

#include <random>

#include "dynk/hierarchy.hpp"
#include "dynk/numeric.hpp"
#include "dynk/objective.hpp"
#include "dynk/oracles.hpp"
#include "test_support.hpp"

using namespace dynk;

namespace {

HierarchyConfig config_for(int k, double epsilon, int p = 1) {
  HierarchyConfig cfg;
  cfg.k = k;
  cfg.epsilon = epsilon;
  cfg.p = p;
  cfg.search.p = p;
  cfg.search.epsilon = 0.2;
  cfg.search.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("slack schedule for k=4, epsilon=1/2") {
  WeightedMetricSpace s;
  CenterHierarchy h(&s, config_for(4, 0.5));
  CHECK(h.levels() == 2);
  CHECK(h.slack(0) == 4);
  CHECK(h.slack(1) == 2);
  CHECK(h.slack(2) == 1);
  CHECK(h.slack(3) == 0);
  CHECK(h.slack(-1) == 8);  // k^{1 + 1/levels}
}

TEST_CASE("empty space yields empty layers") {
  WeightedMetricSpace s;
  CenterHierarchy h(&s, config_for(3, 0.5));
  CHECK(h.current_solution().empty());
  CHECK(h.current_cost(1) == 0.0);
  h.check_invariants();
}

TEST_CASE("small spaces are covered at zero cost") {
  WeightedMetricSpace s;
  HierarchyConfig cfg = config_for(4, 0.5);
  CenterHierarchy h(&s, cfg);
  s.insert(0, 1.0, {0.0});
  h.update(UpdateKind::insert, 0);
  s.insert(1, 1.0, {5.0});
  h.update(UpdateKind::insert, 1);
  CHECK(h.current_solution() == CenterSet{0, 1});
  CHECK(h.current_cost(1) == doctest::Approx(0.0));
  h.check_invariants();
}

TEST_CASE("counter trace for k=4, epsilon=1/2") {
  std::mt19937_64 rng(41);
  auto s = testing::random_space(rng, 12);
  CenterHierarchy h(&s, config_for(4, 0.5));
  // First post-init update always rebuilds from the bottom layer only;
  // upper layers change by at most the lazy insert.
  s.insert(100, 1.0, {1.0, 1.0});
  h.update(UpdateKind::insert, 100);
  CHECK(h.last_stats().rebuilt_from == 3);
  for (int i = 0; i < 3; ++i) CHECK(h.last_stats().layer_recourse[i] <= 1);
  // Second update: tau_2 reaches 2 > s_2 = 1, so layer 2 rebuilds.
  s.insert(101, 1.0, {2.0, 2.0});
  h.update(UpdateKind::insert, 101);
  CHECK(h.last_stats().rebuilt_from == 2);
  h.check_invariants();
}

TEST_CASE("line-space stream with k=1 converges to the brute optimum") {
  WeightedMetricSpace s;
  CenterHierarchy h(&s, config_for(1, 0.5));
  s.insert(0, 1.0, {0.0});
  h.update(UpdateKind::insert, 0);
  s.insert(1, 1.0, {1.0});
  h.update(UpdateKind::insert, 1);
  s.insert(2, 1.0, {3.0});
  h.update(UpdateKind::insert, 2);
  CHECK(h.current_solution() == CenterSet{1});
  CHECK(h.current_cost(1) == doctest::Approx(3.0));
}

TEST_CASE("structural invariants and recourse bound over a random stream") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  for (double eps : {0.5, 1.0 / 3.0}) {
    WeightedMetricSpace s;
    CenterHierarchy h(&s, config_for(3, eps));
    std::vector<PointId> live;
    PointId next_id = 0;
    CenterSet prev = h.current_solution();
    for (int step = 0; step < 120; ++step) {
      bool insert = live.size() < 6 || (live.size() < 16 && rng() % 3 != 0);
      if (insert) {
        PointId id = next_id++;
        s.insert(id, weight(rng), {coord(rng), coord(rng)});
        h.update(UpdateKind::insert, id);
        live.push_back(id);
      } else {
        std::size_t pos = rng() % live.size();
        PointId id = live[pos];
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pos));
        s.erase(id);
        h.update(UpdateKind::erase, id);
      }
      h.check_invariants();
      h.collect_garbage();
      const auto& st = h.last_stats();
      REQUIRE(st.rebuilt_from >= 0);
      long long cap = 4 * h.slack(st.rebuilt_from - 1) + 1;
      for (int i = 0; i <= h.levels() + 1; ++i) CHECK(st.layer_recourse[i] <= cap);
      prev = h.current_solution();
    }
  }
}

TEST_CASE("solution cost tracks the optimum within the hierarchy bound") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  WeightedMetricSpace s;
  HierarchyConfig cfg = config_for(3, 0.5);
  CenterHierarchy h(&s, cfg);
  std::vector<PointId> live;
  PointId next_id = 0;
  double eps_ls = cfg.search.epsilon;
  double alpha = 1.0 + 7.0 * eps_ls;
  double beta = 6.0 * cfg.p * alpha;
  double bound = 0.0;
  for (int i = 0; i <= h.levels() + 1; ++i) bound += ipow(alpha, i);
  bound *= 2.0 * beta;

  for (int step = 0; step < 60; ++step) {
    bool insert = live.size() < 5 || (live.size() < 14 && rng() % 3 != 0);
    if (insert) {
      PointId id = next_id++;
      s.insert(id, 1.0, {coord(rng), coord(rng)});
      h.update(UpdateKind::insert, id);
      live.push_back(id);
    } else {
      std::size_t pos = rng() % live.size();
      PointId id = live[pos];
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(pos));
      s.erase(id);
      h.update(UpdateKind::erase, id);
    }
    if (step % 10 == 0 && s.size() > 0) {
      double opt = brute_opt_clustering(s, cfg.k, cfg.p).cost;
      double cost = h.current_cost(cfg.p);
      if (opt == 0.0)
        CHECK(cost == doctest::Approx(0.0));
      else
        CHECK(cost / opt <= bound);
    }
  }
}

TEST_CASE("cost does not increase while deletions stay lazy") {
  std::mt19937_64 rng(44);
  auto s = testing::random_space(rng, 16);
  CenterHierarchy h(&s, config_for(4, 0.5));
  auto ids = s.live_ids();
  auto it = ids.begin();
  for (int burst = 0; burst < 8; ++burst, ++it) {
    CenterSet frozen = h.current_solution();
    double before = clustering_cost(s, frozen, 1);
    s.erase(*it);
    // The frozen solution can only get cheaper as demand disappears.
    double after = s.size() ? clustering_cost(s, frozen, 1) : 0.0;
    CHECK(approx_le(after, before));
    h.update(UpdateKind::erase, *it);
    h.check_invariants();
  }
}

TEST_CASE("current cost matches the objective module") {
  std::mt19937_64 rng(45);
  auto s = testing::random_space(rng, 10);
  CenterHierarchy h(&s, config_for(2, 0.5, 2));
  CHECK(h.current_cost(2) == doctest::Approx(clustering_cost(s, h.current_solution(), 2)));
}

TEST_CASE("identical streams and seeds give identical layers") {
  for (int run = 0; run < 2; ++run) {
    static std::vector<CenterSet> first_layers;
    std::mt19937_64 rng(48);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    WeightedMetricSpace s;
    CenterHierarchy h(&s, config_for(3, 0.5));
    std::vector<PointId> live;
    PointId next_id = 0;
    for (int step = 0; step < 40; ++step) {
      if (live.size() < 4 || rng() % 3 != 0) {
        PointId id = next_id++;
        s.insert(id, 1.0, {coord(rng), coord(rng)});
        h.update(UpdateKind::insert, id);
        live.push_back(id);
      } else {
        std::size_t pos = rng() % live.size();
        PointId id = live[pos];
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pos));
        s.erase(id);
        h.update(UpdateKind::erase, id);
      }
    }
    if (run == 0)
      first_layers = h.layers();
    else
      CHECK(h.layers() == first_layers);
  }
}

TEST_CASE("max-norm objective runs through the hierarchy") {
  std::mt19937_64 rng(46);
  auto s = testing::random_space(rng, 12);
  CenterHierarchy h(&s, config_for(3, 0.5, kPInfinity));
  CHECK(h.current_cost(kPInfinity) ==
        doctest::Approx(clustering_cost(s, h.current_solution(), kPInfinity)));
  s.insert(50, 1.0, {3.3, 3.3});
  h.update(UpdateKind::insert, 50);
  h.check_invariants();
}
