#include "dynk/metric_space.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"

namespace dynk {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::nonpositive_weight: return "NonpositiveWeight";
    case Errc::unknown_matrix_id: return "UnknownMatrixId";
    case Errc::unknown_id: return "UnknownId";
    case Errc::degenerate_space: return "DegenerateSpace";
    case Errc::invalid_metric: return "InvalidMetric";
    case Errc::empty_centers: return "EmptyCenters";
    case Errc::empty_space: return "EmptySpace";
    case Errc::too_large: return "TooLarge";
    case Errc::candidate_mismatch: return "CandidateMismatch";
    case Errc::already_present: return "AlreadyPresent";
    case Errc::not_present: return "NotPresent";
    case Errc::not_enough_candidates: return "NotEnoughCandidates";
    case Errc::membership_violation: return "MembershipViolation";
    case Errc::nonpositive_lambda: return "NonpositiveLambda";
    case Errc::k_out_of_range: return "KOutOfRange";
    case Errc::grid_search_failed: return "GridSearchFailed";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

WeightedMetricSpace::WeightedMetricSpace(MetricKind kind) : kind_(kind) {}

WeightedMetricSpace WeightedMetricSpace::from_matrix(std::vector<double> flat, std::size_t n) {
  if (n == 0 || flat.size() != n * n)
    fail(Errc::invalid_metric, "matrix size does not match declared universe");
  WeightedMetricSpace s;
  s.matrix_n_ = n;
  s.matrix_ = std::move(flat);
  auto at = [&](std::size_t i, std::size_t j) { return s.matrix_[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) fail(Errc::invalid_metric, "nonzero diagonal at row " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) < 0.0) fail(Errc::invalid_metric, "negative distance");
      if (at(i, j) == 0.0) fail(Errc::invalid_metric, "zero distance between distinct points");
      if (!approx_eq(at(i, j), at(j, i)))
        fail(Errc::invalid_metric, "matrix is not symmetric");
    }
  }
  if (n <= 512) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!approx_le(at(i, k), at(i, j) + at(j, k)))
            fail(Errc::invalid_metric, "triangle inequality violated at (" + std::to_string(i) +
                                           "," + std::to_string(j) + "," + std::to_string(k) + ")");
  } else {
    std::fprintf(stderr, "dynkclust: warning: triangle check skipped for n=%zu > 512\n", n);
  }
  return s;
}

double WeightedMetricSpace::raw_distance(PointId i, PointId j) const {
  if (i == j) return 0.0;
  if (matrix_mode()) return matrix_[static_cast<std::size_t>(i) * matrix_n_ + static_cast<std::size_t>(j)];
  const auto& a = coords_.at(i);
  const auto& b = coords_.at(j);
  if (kind_ == MetricKind::euclidean) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
      double d = a[t] - b[t];
      s += d * d;
    }
    return std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) s += std::abs(a[t] - b[t]);
  return s;
}

void WeightedMetricSpace::add_live_point(PointId id, double weight) {
  for (const auto& [other, w] : weights_) {
    (void)w;
    dists_.insert(raw_distance(id, other));
  }
  weights_[id] = weight;
  wvals_.insert(weight);
}

void WeightedMetricSpace::insert(PointId id, double weight, std::vector<double> coords) {
  if (matrix_mode()) fail(Errc::invalid_metric, "coordinate insert into matrix-mode space");
  if (is_live(id) || dead_.count(id)) fail(Errc::duplicate_id, "id " + std::to_string(id));
  if (!(weight > 0.0)) fail(Errc::nonpositive_weight, "id " + std::to_string(id));
  if (dim_set_ && coords.size() != dim_)
    fail(Errc::invalid_metric, "dimension mismatch for id " + std::to_string(id));
  dim_ = coords.size();
  dim_set_ = true;
  coords_[id] = std::move(coords);
  // Duplicate coordinates would produce a zero distance between distinct points.
  for (const auto& [other, w] : weights_) {
    (void)w;
    if (raw_distance(id, other) == 0.0) {
      coords_.erase(id);
      fail(Errc::invalid_metric,
           "point " + std::to_string(id) + " coincides with live point " + std::to_string(other));
    }
  }
  add_live_point(id, weight);
}

void WeightedMetricSpace::insert(PointId id, double weight) {
  if (!matrix_mode()) fail(Errc::invalid_metric, "matrix insert into coordinate-mode space");
  if (id < 0 || static_cast<std::size_t>(id) >= matrix_n_)
    fail(Errc::unknown_matrix_id, "id " + std::to_string(id));
  if (is_live(id) || dead_.count(id)) fail(Errc::duplicate_id, "id " + std::to_string(id));
  if (!(weight > 0.0)) fail(Errc::nonpositive_weight, "id " + std::to_string(id));
  add_live_point(id, weight);
}

void WeightedMetricSpace::erase(PointId id) {
  auto it = weights_.find(id);
  if (it == weights_.end()) fail(Errc::unknown_id, "id " + std::to_string(id));
  wvals_.erase(wvals_.find(it->second));
  weights_.erase(it);
  for (const auto& [other, w] : weights_) {
    (void)w;
    dists_.erase(dists_.find(raw_distance(id, other)));
  }
  retained_.insert(id);
  dead_.insert(id);
}

bool WeightedMetricSpace::has_payload(PointId id) const {
  if (is_live(id) || retained_.count(id)) return true;
  return false;
}

double WeightedMetricSpace::distance(PointId i, PointId j) const {
  if (!has_payload(i)) fail(Errc::unknown_id, "id " + std::to_string(i));
  if (!has_payload(j)) fail(Errc::unknown_id, "id " + std::to_string(j));
  return raw_distance(i, j);
}

double WeightedMetricSpace::weight(PointId id) const {
  auto it = weights_.find(id);
  if (it == weights_.end()) fail(Errc::unknown_id, "id " + std::to_string(id));
  return it->second;
}

CenterSet WeightedMetricSpace::live_ids() const {
  CenterSet out;
  for (const auto& [id, w] : weights_) {
    (void)w;
    out.insert(id);
  }
  return out;
}

double WeightedMetricSpace::d_min() const {
  if (dists_.empty()) fail(Errc::degenerate_space, "no pairwise distance");
  return *dists_.begin();
}

double WeightedMetricSpace::d_max() const {
  if (dists_.empty()) fail(Errc::degenerate_space, "no pairwise distance");
  return *dists_.rbegin();
}

double WeightedMetricSpace::w_min() const {
  if (wvals_.empty()) fail(Errc::degenerate_space, "empty space");
  return *wvals_.begin();
}

double WeightedMetricSpace::w_max() const {
  if (wvals_.empty()) fail(Errc::degenerate_space, "empty space");
  return *wvals_.rbegin();
}

double WeightedMetricSpace::aspect_ratio() const {
  return (d_max() * w_max()) / (d_min() * w_min());
}

void WeightedMetricSpace::collect_garbage(const CenterSet& keep) {
  for (auto it = retained_.begin(); it != retained_.end();) {
    if (keep.count(*it)) {
      ++it;
    } else {
      coords_.erase(*it);
      it = retained_.erase(it);
    }
  }
}

}  // namespace dynk
