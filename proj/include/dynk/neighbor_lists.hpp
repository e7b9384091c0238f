#ifndef DYNK_NEIGHBOR_LISTS_HPP
#define DYNK_NEIGHBOR_LISTS_HPP

#include <map>
#include <set>
#include <utility>

#include "dynk/metric_space.hpp"

namespace dynk {

// Per live point z, an ordered structure over a shared candidate-center set,
// keyed by (distance(z, c), c) so duplicate distances stay well ordered.
// Rank-1/rank-2 lookups back the swap oracle; candidates may reference
// deleted points as long as their payloads are retained.
class NeighborLists {
 public:
  using Row = std::set<std::pair<double, PointId>>;

  explicit NeighborLists(const WeightedMetricSpace* space);

  // One row per live point, all populated with `candidates` (nonempty).
  static NeighborLists build(const WeightedMetricSpace& space, const CenterSet& candidates);

  void add_candidate(PointId x);
  void remove_candidate(PointId x);

  PointId first(PointId z) const;
  PointId second(PointId z) const;

  void on_point_inserted(PointId z);
  void on_point_deleted(PointId z);

  const CenterSet& candidates() const { return candidates_; }
  const std::map<PointId, Row>& rows() const { return rows_; }

  bool operator==(const NeighborLists& other) const {
    return candidates_ == other.candidates_ && rows_ == other.rows_;
  }

 private:
  const Row& row(PointId z) const;

  const WeightedMetricSpace* space_;
  CenterSet candidates_;
  std::map<PointId, Row> rows_;
};

}  // namespace dynk

#endif  // DYNK_NEIGHBOR_LISTS_HPP
