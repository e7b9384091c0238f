#ifndef DYNK_OBJECTIVE_HPP
#define DYNK_OBJECTIVE_HPP

#include <limits>

#include "dynk/metric_space.hpp"

namespace dynk {

// p = kPInfinity selects the max-norm objective.
inline constexpr int kPInfinity = std::numeric_limits<int>::max();

// d(x, S) = min over centers; ties irrelevant. S may contain deleted points.
double point_to_set_distance(const WeightedMetricSpace& space, PointId x, const CenterSet& s);

// (sum_x w(x) d(x,S)^p)^(1/p), or max_x d(x,S) for p = kPInfinity. Distances
// are normalized by their maximum internally so large p does not overflow.
double clustering_cost(const WeightedMetricSpace& space, const CenterSet& s, int p);

// clustering_cost^p without the final root (the k-means objective at p = 2).
double unnormalized_cost(const WeightedMetricSpace& space, const CenterSet& s, int p);

// lambda * |S| + sum_x w(x) d(x,S).
double facility_cost(const WeightedMetricSpace& space, const CenterSet& s, double lambda);

// Nearest point of X for each member of S, ties toward the smallest id.
CenterSet project_set(const WeightedMetricSpace& space, const CenterSet& s, const CenterSet& x);

}  // namespace dynk

#endif  // DYNK_OBJECTIVE_HPP
