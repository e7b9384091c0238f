#ifndef DYNK_PROJECTION_HPP
#define DYNK_PROJECTION_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dynk/metric_space.hpp"

namespace dynk {

// Maintains the ordered greedy projection of a center sequence A onto a live
// set B: indexes are processed in insertion order and each picks its nearest
// still-unclaimed B point (ties toward the smallest id). The result Lambda is
// a proper solution, and every single-point change to A or B moves at most
// two elements of Lambda.
//
// Each index keeps a sorted availability list over B minus the upstream
// choices; updates ripple forward carrying the O(1) pending insertions and
// removals until the pending sets drain.
class DynamicProjection {
 public:
  explicit DynamicProjection(const WeightedMetricSpace* space);

  struct Delta {
    std::vector<PointId> added;
    std::vector<PointId> removed;
    std::size_t size() const { return added.size() + removed.size(); }
  };

  Delta apply_A_insert(PointId y);
  Delta apply_A_delete(PointId y);
  Delta apply_B_insert(PointId x);
  Delta apply_B_delete(PointId x);

  const CenterSet& proper_solution() const { return lambda_; }
  std::vector<PointId> order() const;
  const CenterSet& b_side() const { return b_; }

  // Reruns the greedy projection from scratch on the current (order, B);
  // test oracle for the incremental maintenance.
  CenterSet recompute_from_scratch() const;

 private:
  struct Entry {
    PointId y;
    std::set<std::pair<double, PointId>> avail;  // B minus upstream choices
    std::optional<PointId> choice;
  };

  Delta finish(const CenterSet& before);
  void forward_scan(std::size_t start, std::set<PointId> to_add, std::set<PointId> to_rem);
  void refresh_lambda();

  const WeightedMetricSpace* space_;
  std::vector<Entry> entries_;
  CenterSet b_;
  CenterSet lambda_;
};

}  // namespace dynk

#endif  // DYNK_PROJECTION_HPP
