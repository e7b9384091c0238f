#include "dynk/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"

namespace dynk {

namespace {

double space_scale(const WeightedMetricSpace& space) {
  if (space.size() < 2) return 1.0;
  double dmax = space.d_max();
  return dmax > 0.0 ? 1.0 / dmax : 1.0;
}

// Swap evaluation in scaled-distance units (scale cancels in the argmin).
BestSwapResult best_swap_scaled(const WeightedMetricSpace& space, const CenterSet& s, PointId x,
                                NeighborLists& lists, int p, double scale) {
  if (lists.candidates() != s) fail(Errc::candidate_mismatch, "lists do not hold S");
  if (s.count(x)) fail(Errc::candidate_mismatch, "x already in S");

  lists.add_candidate(x);

  double cost_all = 0.0;
  std::map<PointId, double> removal_delta;  // only centers that serve someone appear
  for (const auto& [z, row] : lists.rows()) {
    double w = space.weight(z);
    auto it = row.begin();
    double d1 = it->first;
    PointId y1 = it->second;
    cost_all += w * ipow(scale * d1, p);
    if (row.size() >= 2) {
      double d2 = std::next(it)->first;
      removal_delta[y1] += w * (ipow(scale * d2, p) - ipow(scale * d1, p));
    }
  }

  // Every removal y in S + x is a candidate; y = x is the no-op swap.
  BestSwapResult best{x, std::numeric_limits<double>::infinity()};
  for (PointId y : lists.candidates()) {
    double c = cost_all;
    auto it = removal_delta.find(y);
    if (it != removal_delta.end()) c += it->second;
    if (c < best.cost_p || (c == best.cost_p && y < best.removed)) best = {y, c};
  }

  lists.remove_candidate(x);
  return best;
}

}  // namespace

std::uint64_t local_search_iteration_budget(std::size_t n, double delta, std::size_t x_size, int k,
                                            const LocalSearchParams& params) {
  if (params.max_iters_override) return *params.max_iters_override;
  if (x_size <= static_cast<std::size_t>(k) || n == 0) return 0;
  double s = static_cast<double>(x_size - static_cast<std::size_t>(k));
  double eps = params.epsilon;
  double iters = 2.0 * params.confidence * params.p * s * std::log(static_cast<double>(n)) *
                 std::log(static_cast<double>(n) * delta / eps) / (eps * eps);
  return static_cast<std::uint64_t>(std::ceil(std::max(0.0, iters)));
}

BestSwapResult best_swap(const WeightedMetricSpace& space, const CenterSet& s, PointId x,
                         NeighborLists& lists, int p) {
  double scale = space_scale(space);
  BestSwapResult r = best_swap_scaled(space, s, x, lists, p, scale);
  r.cost_p *= ipow(1.0 / scale, p);
  return r;
}

CenterSet randomized_local_search(const WeightedMetricSpace& space, const CenterSet& x_set, int k,
                                  const LocalSearchParams& params, NeighborLists& lists) {
  if (k < 1) fail(Errc::k_out_of_range, "local search needs k >= 1");
  if (!(params.epsilon > 0.0 && params.epsilon <= 0.5))
    throw std::invalid_argument("local search epsilon must lie in (0, 1/2]");
  if (lists.candidates() != x_set) fail(Errc::candidate_mismatch, "lists do not hold X");
  if (x_set.size() <= static_cast<std::size_t>(k)) return x_set;

  // Start from the k candidates nearest the smallest-id candidate.
  PointId anchor = *x_set.begin();
  std::vector<std::pair<double, PointId>> by_dist;
  by_dist.reserve(x_set.size());
  for (PointId c : x_set) by_dist.emplace_back(space.distance(anchor, c), c);
  std::sort(by_dist.begin(), by_dist.end());

  CenterSet s;
  std::vector<PointId> outside;  // X \ S, sorted; indexable for sampling
  for (std::size_t i = 0; i < by_dist.size(); ++i) {
    if (i < static_cast<std::size_t>(k))
      s.insert(by_dist[i].second);
    else
      outside.push_back(by_dist[i].second);
  }
  std::sort(outside.begin(), outside.end());
  for (PointId c : outside) lists.remove_candidate(c);

  double delta = 1.0;
  if (space.size() >= 2) delta = space.aspect_ratio();
  std::uint64_t iters = local_search_iteration_budget(space.size(), delta, x_set.size(), k, params);

  SplitMix64 rng(params.seed);
  double scale = space_scale(space);
  double prev_cost = std::numeric_limits<double>::infinity();
  for (std::uint64_t it = 0; it < iters; ++it) {
    PointId x = outside[rng.next_below(outside.size())];
    BestSwapResult r = best_swap_scaled(space, s, x, lists, params.p, scale);
    if (!approx_le(r.cost_p, prev_cost))
      throw std::logic_error("local search cost increased across an iteration");
    prev_cost = r.cost_p;
    if (r.removed != x) {
      s.insert(x);
      s.erase(r.removed);
      lists.add_candidate(x);
      lists.remove_candidate(r.removed);
      auto pos = std::lower_bound(outside.begin(), outside.end(), x);
      outside.erase(pos);
      outside.insert(std::lower_bound(outside.begin(), outside.end(), r.removed), r.removed);
    }
  }

  for (PointId c : outside) lists.add_candidate(c);  // restore lists to X
  return s;
}

}  // namespace dynk
