#ifndef DYNK_RADIUS_INDEX_HPP
#define DYNK_RADIUS_INDEX_HPP

#include <map>
#include <utility>

#include "dynk/mass_tree.hpp"
#include "dynk/metric_space.hpp"

namespace dynk {

// Per live point i, a MassTree over {(beta * d(i, j), w(j)) : j live}. The
// scale beta is fixed at construction. radius(i, lambda) returns the smallest
// r at which sum_{scaled d <= r} w(j) (r - d) reaches lambda, and
// connection_cost(i, lambda) the matching fractional connection cost; both in
// O(log n). Updates touch every tree and cost O(n log n).
class RadiusIndex {
 public:
  RadiusIndex(const WeightedMetricSpace* space, double beta);

  // Space must already contain / still retain the point's payload.
  void on_insert(PointId j);
  void on_delete(PointId j);

  double radius(PointId i, double lambda) const;
  double connection_cost(PointId i, double lambda) const;
  std::pair<double, double> radius_and_connection(PointId i, double lambda) const;

  double beta() const { return beta_; }
  std::size_t size() const { return trees_.size(); }
  const MassTree& tree(PointId i) const { return trees_.at(i); }
  const std::map<PointId, MassTree>& trees() const { return trees_; }

 private:
  struct Grown {
    double r;
    const MassTree::Node* boundary;
  };
  Grown grow(PointId i, double lambda) const;

  const WeightedMetricSpace* space_;
  double beta_;
  std::map<PointId, MassTree> trees_;
};

}  // namespace dynk

#endif  // DYNK_RADIUS_INDEX_HPP
