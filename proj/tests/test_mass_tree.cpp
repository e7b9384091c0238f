#include <doctest.h>

#include <random>

#include "dynk/errors.hpp"
#include "dynk/mass_tree.hpp"

using namespace dynk;

namespace {

MassTree example_tree() {
  // (d, q) pairs (1,2), (3,1), (7,4)
  MassTree t;
  t.insert(1.0, 2.0, 10);
  t.insert(3.0, 1.0, 11);
  t.insert(7.0, 4.0, 12);
  return t;
}

const MassTree::Node* find_node(const MassTree::Node* n, double d) {
  if (!n) return nullptr;
  if (n->d == d) return n;
  if (const auto* l = find_node(n->left.get(), d)) return l;
  return find_node(n->right.get(), d);
}

}  // namespace

TEST_CASE("mass query over the whole tree") {
  auto t = example_tree();
  CHECK(MassTree::mass_query(t.root(), 0.0) == doctest::Approx(16.0));
  CHECK(MassTree::mass_query(t.root(), 1.0) == doctest::Approx(22.0));
  const auto* leaf = find_node(t.root(), 1.0);
  REQUIRE(leaf != nullptr);
  CHECK(MassTree::mass_query(leaf, 5.0) == doctest::Approx(0.0));  // single-node subtree
}

TEST_CASE("search query walks the prefix values") {
  auto t = example_tree();
  auto r1 = MassTree::search_query(t.root(), 5.0, 0.0);
  CHECK(r1.node->d == 3.0);
  CHECK(r1.phi == doctest::Approx(4.0));
  auto r2 = MassTree::search_query(t.root(), 20.0, 0.0);
  CHECK(r2.node->d == 7.0);
  CHECK(r2.phi == doctest::Approx(16.0));
  auto r3 = MassTree::search_query(t.root(), 0.5, 0.0);
  CHECK(r3.node->d == 1.0);
  CHECK(r3.phi == doctest::Approx(0.0));
}

TEST_CASE("compute weight sums the ordered prefix") {
  auto t = example_tree();
  CHECK(MassTree::compute_weight(t.root(), find_node(t.root(), 1.0)) == doctest::Approx(2.0));
  CHECK(MassTree::compute_weight(t.root(), find_node(t.root(), 3.0)) == doctest::Approx(3.0));
  CHECK(MassTree::compute_weight(t.root(), find_node(t.root(), 7.0)) == doctest::Approx(7.0));
}

TEST_CASE("prefix aggregates") {
  auto t = example_tree();
  auto p = t.prefix_through(find_node(t.root(), 3.0));
  CHECK(p.q == doctest::Approx(3.0));
  CHECK(p.qd == doctest::Approx(2.0 * 1.0 + 1.0 * 3.0));
  CHECK(p.qd2 == doctest::Approx(2.0 * 1.0 + 1.0 * 9.0));
}

TEST_CASE("insert then erase restores the content") {
  auto t = example_tree();
  auto before = t.in_order();
  t.insert(5.0, 2.5, 13);
  t.erase(5.0, 13);
  CHECK(t.in_order() == before);
  t.audit();
  CHECK_THROWS_AS(t.erase(5.0, 13), Error);
  CHECK_THROWS_AS(t.insert(1.0, 9.0, 10), Error);  // duplicate key
}

TEST_CASE("aggregates survive random churn") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  std::uniform_real_distribution<double> mass(0.1, 5.0);
  MassTree t;
  std::vector<std::pair<double, PointId>> keys;
  PointId next = 0;
  for (int step = 0; step < 400; ++step) {
    if (keys.empty() || rng() % 3 != 0) {
      double d = dist(rng);
      t.insert(d, mass(rng), next);
      keys.emplace_back(d, next);
      ++next;
    } else {
      std::size_t pos = rng() % keys.size();
      t.erase(keys[pos].first, keys[pos].second);
      keys.erase(keys.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    t.audit();
    CHECK(t.size() == keys.size());
  }
}

TEST_CASE("search query matches a linear scan on random trees") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  std::uniform_real_distribution<double> mass(0.1, 3.0);
  for (int rep = 0; rep < 40; ++rep) {
    MassTree t;
    std::vector<std::pair<double, double>> elems;  // (d, q) sorted later
    std::size_t n = 1 + rng() % 24;
    for (std::size_t i = 0; i < n; ++i) {
      double d = dist(rng), q = mass(rng);
      t.insert(d, q, static_cast<PointId>(i));
      elems.emplace_back(d, q);
    }
    std::sort(elems.begin(), elems.end());
    std::uniform_real_distribution<double> mu_dist(0.001, 80.0);
    double mu = mu_dist(rng);
    double eta = (rng() % 2) ? 0.0 : mass(rng);

    // Linear reference: last prefix position with phi_eta < mu.
    double prefix = 0.0;
    std::size_t best = 0;
    double best_phi = 0.0;
    double wsum = 0.0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      prefix = 0.0;
      for (std::size_t j = 0; j <= i; ++j) prefix += elems[j].second * (elems[i].first - elems[j].first);
      prefix += eta * (elems[i].first - elems[0].first);
      if (prefix < mu) {
        best = i;
        best_phi = prefix;
      }
    }
    (void)wsum;
    auto got = MassTree::search_query(t.root(), mu, eta);
    CHECK(got.node->d == doctest::Approx(elems[best].first));
    CHECK(got.phi == doctest::Approx(best_phi).epsilon(1e-9));
  }
}
