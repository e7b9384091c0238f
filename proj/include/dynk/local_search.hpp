#ifndef DYNK_LOCAL_SEARCH_HPP
#define DYNK_LOCAL_SEARCH_HPP

#include <cstdint>
#include <optional>

#include "dynk/neighbor_lists.hpp"

namespace dynk {

struct LocalSearchParams {
  int p = 1;                   // finite objective exponent used inside the search
  double epsilon = 0.2;        // in (0, 1/2]
  double confidence = 1.0;     // c >= 1
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_iters_override;
};

// ceil(2 c p s ln(n) ln(n Delta / eps) / eps^2) with s = |X| - k, or the
// override when set. n and Delta describe the current live space.
std::uint64_t local_search_iteration_budget(std::size_t n, double delta, std::size_t x_size, int k,
                                            const LocalSearchParams& params);

struct BestSwapResult {
  PointId removed;  // the y in S + x whose removal is cheapest (y = x is the no-op)
  double cost_p;    // resulting unnormalized cost, sum_z w(z) d(z, S+x-y)^p
};

// Evaluates every removal y from S + x in one pass over the neighbor lists:
// points whose nearest center is y reassign to their rank-2 candidate, nobody
// else moves. `lists` must hold exactly S and is restored before returning.
// Comparisons run on distances scaled by 1/d_max so large p cannot overflow;
// the scale cancels in the argmin. Ties break toward the smallest id.
BestSwapResult best_swap(const WeightedMetricSpace& space, const CenterSet& s, PointId x,
                         NeighborLists& lists, int p);

// Repeatedly samples a candidate x from X \ S and applies its best swap,
// for the budgeted number of iterations. Returns S of size min(k, |X|);
// X is returned unchanged when |X| <= k. `lists` must hold exactly X and is
// restored to X before returning. Deterministic given the seed.
CenterSet randomized_local_search(const WeightedMetricSpace& space, const CenterSet& x_set, int k,
                                  const LocalSearchParams& params, NeighborLists& lists);

}  // namespace dynk

#endif  // DYNK_LOCAL_SEARCH_HPP
