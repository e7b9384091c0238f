#include "dynk/oracles.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"
#include "dynk/objective.hpp"

namespace dynk {

namespace {

std::vector<PointId> sorted_live(const WeightedMetricSpace& space) {
  std::vector<PointId> ids;
  ids.reserve(space.size());
  for (const auto& [id, w] : space.live()) {
    (void)w;
    ids.push_back(id);
  }
  return ids;
}

// Calls f on every size-m index subset of [0, n).
template <typename F>
void for_each_combination(std::size_t n, std::size_t m, F&& f) {
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

BruteClustering brute_opt_clustering(const WeightedMetricSpace& space, int k, int p) {
  if (space.size() == 0) fail(Errc::empty_space, "brute_opt_clustering");
  if (space.size() > 24) fail(Errc::too_large, "brute_opt_clustering caps at n=24");
  if (k < 1) fail(Errc::k_out_of_range, "k must be positive");
  auto ids = sorted_live(space);
  std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(k), ids.size());

  BruteClustering best;
  best.cost = std::numeric_limits<double>::infinity();
  for_each_combination(ids.size(), m, [&](const std::vector<std::size_t>& idx) {
    CenterSet s;
    for (std::size_t i : idx) s.insert(ids[i]);
    double c = clustering_cost(space, s, p);
    if (c < best.cost) {
      best.cost = c;
      best.centers = std::move(s);
    }
  });
  return best;
}

BruteUfl brute_opt_ufl(const WeightedMetricSpace& space, double lambda) {
  if (space.size() == 0) fail(Errc::empty_space, "brute_opt_ufl");
  if (space.size() > 20) fail(Errc::too_large, "brute_opt_ufl caps at n=20");
  if (lambda < 0.0) fail(Errc::nonpositive_lambda, "brute_opt_ufl");
  auto ids = sorted_live(space);
  std::size_t n = ids.size();

  BruteUfl best;
  best.cost = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    CenterSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ULL << i)) s.insert(ids[i]);
    double c = facility_cost(space, s, lambda);
    if (c < best.cost) {
      best.cost = c;
      best.centers = std::move(s);
    }
  }
  return best;
}

BruteRadius brute_radius(const WeightedMetricSpace& space, PointId i, double lambda, double beta) {
  if (!space.is_live(i)) fail(Errc::unknown_id, "brute_radius id " + std::to_string(i));
  if (!(lambda > 0.0)) fail(Errc::nonpositive_lambda, "brute_radius");

  // Scaled (distance, weight) pairs, including i itself at distance 0.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(space.size());
  for (const auto& [j, w] : space.live()) pts.emplace_back(beta * space.distance(i, j), w);
  std::sort(pts.begin(), pts.end());

  // f(r) = sum_{d_j <= r} w_j (r - d_j) is piecewise linear and nondecreasing;
  // on the segment after the t-th point it equals W*r - D with W, D the
  // running weight and weighted-distance sums.
  double r = 0.0;
  double W = 0.0, D = 0.0;
  bool solved = false;
  for (std::size_t t = 0; t < pts.size() && !solved; ++t) {
    W += pts[t].second;
    D += pts[t].second * pts[t].first;
    double cand = (lambda + D) / W;
    double seg_end = (t + 1 < pts.size()) ? pts[t + 1].first : std::numeric_limits<double>::infinity();
    if (cand <= seg_end) {
      r = cand;
      solved = true;
    }
  }
  if (!solved) r = (lambda + D) / W;  // unreachable; last segment is unbounded

  double c = 0.0;
  for (const auto& [d, w] : pts)
    if (d <= r) c += w * (r - d) * space.weight(i) * d;
  c /= lambda;
  return {r, c};
}

bool brute_local_optimum_check(const WeightedMetricSpace& space, const CenterSet& s,
                               const CenterSet& x, int p) {
  if (!std::includes(x.begin(), x.end(), s.begin(), s.end()))
    fail(Errc::membership_violation, "S must be a subset of X");
  double base = unnormalized_cost(space, s, p);
  for (PointId cand : x) {
    if (s.count(cand)) continue;
    CenterSet splus = s;
    splus.insert(cand);
    for (PointId y : splus) {
      CenterSet swapped = splus;
      swapped.erase(y);
      if (swapped.empty()) continue;
      double c = unnormalized_cost(space, swapped, p);
      if (c < base && !approx_eq(c, base)) return false;
    }
  }
  return true;
}

}  // namespace dynk
