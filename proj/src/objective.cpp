#include "dynk/objective.hpp"

#include <algorithm>
#include <cmath>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"

namespace dynk {

double point_to_set_distance(const WeightedMetricSpace& space, PointId x, const CenterSet& s) {
  if (s.empty()) fail(Errc::empty_centers, "point-to-set distance");
  double best = std::numeric_limits<double>::infinity();
  for (PointId c : s) best = std::min(best, space.distance(x, c));
  return best;
}

double clustering_cost(const WeightedMetricSpace& space, const CenterSet& s, int p) {
  if (s.empty()) fail(Errc::empty_centers, "clustering cost");
  if (space.size() == 0) fail(Errc::empty_space, "clustering cost");
  double dmax = 0.0;
  for (const auto& [x, w] : space.live()) {
    (void)w;
    dmax = std::max(dmax, point_to_set_distance(space, x, s));
  }
  if (p == kPInfinity || dmax == 0.0) return dmax;
  double sum = 0.0;
  for (const auto& [x, w] : space.live())
    sum += w * ipow(point_to_set_distance(space, x, s) / dmax, p);
  return dmax * std::pow(sum, 1.0 / p);
}

double unnormalized_cost(const WeightedMetricSpace& space, const CenterSet& s, int p) {
  if (s.empty()) fail(Errc::empty_centers, "unnormalized cost");
  if (space.size() == 0) fail(Errc::empty_space, "unnormalized cost");
  double sum = 0.0;
  for (const auto& [x, w] : space.live()) sum += w * ipow(point_to_set_distance(space, x, s), p);
  return sum;
}

double facility_cost(const WeightedMetricSpace& space, const CenterSet& s, double lambda) {
  if (s.empty()) fail(Errc::empty_centers, "facility cost");
  if (lambda < 0.0) fail(Errc::nonpositive_lambda, "facility cost");
  double sum = lambda * static_cast<double>(s.size());
  for (const auto& [x, w] : space.live()) sum += w * point_to_set_distance(space, x, s);
  return sum;
}

CenterSet project_set(const WeightedMetricSpace& space, const CenterSet& s, const CenterSet& x) {
  if (x.empty()) fail(Errc::empty_centers, "projection target");
  CenterSet out;
  for (PointId y : s) {
    PointId best = *x.begin();
    double best_d = space.distance(y, best);
    for (PointId c : x) {
      double d = space.distance(y, c);
      if (d < best_d) {  // ties keep the smaller id seen first
        best_d = d;
        best = c;
      }
    }
    out.insert(best);
  }
  return out;
}

}  // namespace dynk
