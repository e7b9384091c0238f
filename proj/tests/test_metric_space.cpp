#include <doctest.h>

#include <functional>
#include <random>

#include "dynk/errors.hpp"
#include "dynk/metric_space.hpp"
#include "dynk/numeric.hpp"
#include "test_support.hpp"

using namespace dynk;

namespace {

bool throws_code(Errc code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("single point has no pairwise distances") {
  WeightedMetricSpace s;
  s.insert(7, 1.0, {0.0});
  CHECK(s.size() == 1);
  CHECK(throws_code(Errc::degenerate_space, [&] { s.d_min(); }));
  CHECK(throws_code(Errc::degenerate_space, [&] { s.aspect_ratio(); }));
}

TEST_CASE("line space extrema") {
  auto s = testing::line_space();
  CHECK(s.d_min() == doctest::Approx(1.0));
  CHECK(s.d_max() == doctest::Approx(3.0));
  CHECK(s.aspect_ratio() == doctest::Approx(3.0));
}

TEST_CASE("insert rejections") {
  WeightedMetricSpace s;
  s.insert(0, 1.0, {0.0});
  CHECK(throws_code(Errc::nonpositive_weight, [&] { s.insert(1, 0.0, {1.0}); }));
  CHECK(throws_code(Errc::duplicate_id, [&] { s.insert(0, 1.0, {2.0}); }));
  CHECK(throws_code(Errc::invalid_metric, [&] { s.insert(2, 1.0, {0.0}); }));  // coincident
  s.erase(0);
  CHECK(throws_code(Errc::duplicate_id, [&] { s.insert(0, 1.0, {5.0}); }));  // ids not reused
}

TEST_CASE("deletions update extrema") {
  auto s = testing::line_space();
  s.erase(2);
  CHECK(s.d_min() == doctest::Approx(1.0));
  CHECK(s.d_max() == doctest::Approx(1.0));
  s.erase(1);
  s.erase(0);
  CHECK(s.size() == 0);
  CHECK(throws_code(Errc::degenerate_space, [&] { s.w_min(); }));
  CHECK(throws_code(Errc::unknown_id, [&] { s.erase(42); }));
}

TEST_CASE("distance basics") {
  auto s = testing::line_space();
  CHECK(s.distance(0, 0) == 0.0);
  CHECK(s.distance(0, 2) == doctest::Approx(3.0));
  CHECK(s.distance(2, 0) == doctest::Approx(3.0));
  CHECK(throws_code(Errc::unknown_id, [&] { s.distance(0, 99); }));
}

TEST_CASE("deleted points stay queryable until collected") {
  auto s = testing::line_space();
  s.erase(2);
  CHECK(s.distance(0, 2) == doctest::Approx(3.0));
  s.collect_garbage({});
  CHECK(throws_code(Errc::unknown_id, [&] { s.distance(0, 2); }));
}

TEST_CASE("matrix mode reads cells and validates") {
  // 3-point line metric as a matrix.
  std::vector<double> m = {0, 1, 3, 1, 0, 2, 3, 2, 0};
  auto s = WeightedMetricSpace::from_matrix(m, 3);
  s.insert(0, 1.0);
  s.insert(2, 1.0);
  CHECK(s.distance(0, 2) == doctest::Approx(3.0));
  CHECK(throws_code(Errc::unknown_matrix_id, [&] { s.insert(5, 1.0); }));

  std::vector<double> bad_tri = {0, 1, 9, 1, 0, 2, 9, 2, 0};  // 9 > 1 + 2
  CHECK(throws_code(Errc::invalid_metric, [&] { WeightedMetricSpace::from_matrix(bad_tri, 3); }));
  std::vector<double> bad_zero = {0, 0, 1, 0, 0, 1, 1, 1, 0};
  CHECK(throws_code(Errc::invalid_metric, [&] { WeightedMetricSpace::from_matrix(bad_zero, 3); }));
  std::vector<double> bad_sym = {0, 1, 3, 2, 0, 2, 3, 2, 0};
  CHECK(throws_code(Errc::invalid_metric, [&] { WeightedMetricSpace::from_matrix(bad_sym, 3); }));
}

TEST_CASE("aspect ratio is one for an equilateral configuration") {
  std::vector<double> m = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  auto s = WeightedMetricSpace::from_matrix(m, 3);
  for (PointId i = 0; i < 3; ++i) s.insert(i, 2.0);
  CHECK(s.aspect_ratio() == doctest::Approx(1.0));
}

TEST_CASE("extrema tracker matches brute force over random update sequences") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> weight(0.5, 4.0);

  WeightedMetricSpace s;
  std::vector<PointId> live;
  PointId next_id = 0;
  for (int step = 0; step < 100; ++step) {
    bool do_insert = live.size() < 2 || (rng() % 3) != 0;
    if (do_insert) {
      PointId id = next_id++;
      s.insert(id, weight(rng), {coord(rng), coord(rng)});
      live.push_back(id);
    } else {
      std::size_t pos = rng() % live.size();
      s.erase(live[pos]);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    if (live.size() < 2) continue;

    double dmin = 1e300, dmax = 0, wmin = 1e300, wmax = 0;
    for (std::size_t a = 0; a < live.size(); ++a) {
      wmin = std::min(wmin, s.weight(live[a]));
      wmax = std::max(wmax, s.weight(live[a]));
      for (std::size_t b = a + 1; b < live.size(); ++b) {
        double d = s.distance(live[a], live[b]);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
      }
    }
    CHECK(s.d_min() == doctest::Approx(dmin));
    CHECK(s.d_max() == doctest::Approx(dmax));
    CHECK(s.w_min() == doctest::Approx(wmin));
    CHECK(s.w_max() == doctest::Approx(wmax));
  }
}

TEST_CASE("l1 metric") {
  WeightedMetricSpace s(MetricKind::l1);
  s.insert(0, 1.0, {0.0, 0.0});
  s.insert(1, 1.0, {1.0, 2.0});
  CHECK(s.distance(0, 1) == doctest::Approx(3.0));
}

TEST_CASE("coordinate dimension is fixed for the whole run") {
  WeightedMetricSpace s;
  s.insert(0, 1.0, {0.0, 0.0});
  CHECK(throws_code(Errc::invalid_metric, [&] { s.insert(1, 1.0, {1.0}); }));
  s.erase(0);
  // still fixed even when no point is live but payloads are retained
  CHECK(throws_code(Errc::invalid_metric, [&] { s.insert(2, 1.0, {1.0, 2.0, 3.0}); }));
  s.insert(3, 1.0, {5.0, 5.0});
  CHECK(s.distance(0, 3) == doctest::Approx(std::sqrt(50.0)));
}
