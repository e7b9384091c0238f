#ifndef DYNK_METRIC_SPACE_HPP
#define DYNK_METRIC_SPACE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace dynk {

using PointId = std::int64_t;

// A solution is just a set of point ids. It may reference points that have
// been deleted from the live space (improper solutions); their payloads stay
// queryable until garbage collection.
using CenterSet = std::set<PointId>;

enum class MetricKind { euclidean, l1 };

// Dynamic weighted metric space with a distance oracle and extrema tracking.
//
// Two distance sources are supported:
//  * coordinate mode: each point carries a real vector, distances are
//    Euclidean or L1;
//  * matrix mode: a fixed symmetric matrix over a declared universe of ids
//    0..n-1, validated (symmetry, zero diagonal, no zero off-diagonal entry,
//    triangle inequality for n <= 512) at load.
//
// Ordered multisets of all live pairwise distances and live weights are kept
// in sync with every update, so d_min/d_max/w_min/w_max and the aspect ratio
// are exact at all times.
//
// Deleted points keep their payloads (coordinates / matrix row access) so
// that improper centers remain distance-queryable; collect_garbage() drops
// retained payloads that no structure references anymore. Ids are never
// reused within a run.
//
// Concurrency: single writer; read-only queries are safe between updates.
class WeightedMetricSpace {
 public:
  explicit WeightedMetricSpace(MetricKind kind = MetricKind::euclidean);

  // Matrix mode. `flat` is the row-major n*n matrix.
  static WeightedMetricSpace from_matrix(std::vector<double> flat, std::size_t n);

  bool matrix_mode() const { return matrix_n_ > 0; }
  MetricKind metric_kind() const { return kind_; }

  // Coordinate-mode insert.
  void insert(PointId id, double weight, std::vector<double> coords);
  // Matrix-mode insert; id must belong to the declared universe.
  void insert(PointId id, double weight);
  void erase(PointId id);

  // Distance between two points that are live or retained.
  double distance(PointId i, PointId j) const;

  bool is_live(PointId id) const { return weights_.count(id) > 0; }
  bool has_payload(PointId id) const;
  std::size_t size() const { return weights_.size(); }
  double weight(PointId id) const;

  // Live point ids in increasing order, with their weights.
  const std::map<PointId, double>& live() const { return weights_; }
  CenterSet live_ids() const;

  double d_min() const;
  double d_max() const;
  double w_min() const;
  double w_max() const;

  // Delta = (d_max * w_max) / (d_min * w_min). Requires >= 2 live points.
  double aspect_ratio() const;

  // Drops payloads of deleted points not listed in `keep`.
  void collect_garbage(const CenterSet& keep);

 private:
  double raw_distance(PointId i, PointId j) const;
  void add_live_point(PointId id, double weight);

  MetricKind kind_;
  std::size_t matrix_n_ = 0;
  std::vector<double> matrix_;
  std::size_t dim_ = 0;  // fixed by the first coordinate insert
  bool dim_set_ = false;

  std::map<PointId, double> weights_;                // live points only
  std::map<PointId, std::vector<double>> coords_;    // live + retained (coord mode)
  std::set<PointId> retained_;                       // deleted but still queryable
  std::set<PointId> dead_;                           // every id ever erased

  std::multiset<double> dists_;   // all live pairwise distances
  std::multiset<double> wvals_;   // all live weights
};

}  // namespace dynk

#endif  // DYNK_METRIC_SPACE_HPP
