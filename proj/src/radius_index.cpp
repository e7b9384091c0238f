#include "dynk/radius_index.hpp"

#include <algorithm>
#include <string>

#include "dynk/errors.hpp"

namespace dynk {

RadiusIndex::RadiusIndex(const WeightedMetricSpace* space, double beta)
    : space_(space), beta_(beta) {
  for (const auto& [i, wi] : space_->live()) {
    (void)wi;
    MassTree& own = trees_[i];
    for (const auto& [j, wj] : space_->live()) own.insert(beta_ * space_->distance(i, j), wj, j);
  }
}

void RadiusIndex::on_insert(PointId j) {
  if (trees_.count(j)) fail(Errc::duplicate_id, "radius index id " + std::to_string(j));
  double wj = space_->weight(j);
  for (auto& [i, tree] : trees_) tree.insert(beta_ * space_->distance(i, j), wj, j);
  MassTree& own = trees_[j];
  for (const auto& [i, wi] : space_->live()) own.insert(beta_ * space_->distance(j, i), wi, i);
}

void RadiusIndex::on_delete(PointId j) {
  auto it = trees_.find(j);
  if (it == trees_.end()) fail(Errc::unknown_id, "radius index id " + std::to_string(j));
  trees_.erase(it);
  for (auto& [i, tree] : trees_) tree.erase(beta_ * space_->distance(i, j), j);
}

RadiusIndex::Grown RadiusIndex::grow(PointId i, double lambda) const {
  if (!(lambda > 0.0)) fail(Errc::nonpositive_lambda, "radius query");
  auto it = trees_.find(i);
  if (it == trees_.end()) fail(Errc::unknown_id, "radius query id " + std::to_string(i));
  const MassTree& tree = it->second;
  auto [boundary, gamma] = MassTree::search_query(tree.root(), lambda, 0.0);
  // gamma < lambda by construction; points exactly at the final radius
  // contribute zero slack, so the boundary node's prefix suffices.
  if (lambda - gamma <= 1e-12 * lambda) return {boundary->d, boundary};
  double mass = MassTree::compute_weight(tree.root(), boundary);
  return {boundary->d + (lambda - gamma) / mass, boundary};
}

double RadiusIndex::radius(PointId i, double lambda) const { return grow(i, lambda).r; }

double RadiusIndex::connection_cost(PointId i, double lambda) const {
  return radius_and_connection(i, lambda).second;
}

std::pair<double, double> RadiusIndex::radius_and_connection(PointId i, double lambda) const {
  Grown g = grow(i, lambda);
  MassTree::Prefix p = trees_.at(i).prefix_through(g.boundary);
  double c = space_->weight(i) / lambda * (g.r * p.qd - p.qd2);
  return {g.r, std::max(0.0, c)};
}

}  // namespace dynk
