#include "dynk/neighbor_lists.hpp"

#include <string>

#include "dynk/errors.hpp"

namespace dynk {

NeighborLists::NeighborLists(const WeightedMetricSpace* space) : space_(space) {}

NeighborLists NeighborLists::build(const WeightedMetricSpace& space, const CenterSet& candidates) {
  if (candidates.empty()) fail(Errc::empty_centers, "NeighborLists::build");
  NeighborLists nl(&space);
  for (const auto& [z, w] : space.live()) {
    (void)w;
    nl.rows_[z];
  }
  for (PointId c : candidates) nl.add_candidate(c);
  return nl;
}

void NeighborLists::add_candidate(PointId x) {
  if (candidates_.count(x)) fail(Errc::already_present, "candidate " + std::to_string(x));
  candidates_.insert(x);
  for (auto& [z, row] : rows_) row.emplace(space_->distance(z, x), x);
}

void NeighborLists::remove_candidate(PointId x) {
  if (!candidates_.count(x)) fail(Errc::not_present, "candidate " + std::to_string(x));
  candidates_.erase(x);
  for (auto& [z, row] : rows_) row.erase({space_->distance(z, x), x});
}

const NeighborLists::Row& NeighborLists::row(PointId z) const {
  auto it = rows_.find(z);
  if (it == rows_.end()) fail(Errc::unknown_id, "no list for point " + std::to_string(z));
  return it->second;
}

PointId NeighborLists::first(PointId z) const {
  const Row& r = row(z);
  if (r.empty()) fail(Errc::not_enough_candidates, "first() on empty candidate set");
  return r.begin()->second;
}

PointId NeighborLists::second(PointId z) const {
  const Row& r = row(z);
  if (r.size() < 2) fail(Errc::not_enough_candidates, "second() needs two candidates");
  return std::next(r.begin())->second;
}

void NeighborLists::on_point_inserted(PointId z) {
  if (rows_.count(z)) fail(Errc::already_present, "list for point " + std::to_string(z));
  Row& row = rows_[z];
  for (PointId c : candidates_) row.emplace(space_->distance(z, c), c);
}

void NeighborLists::on_point_deleted(PointId z) {
  auto it = rows_.find(z);
  if (it == rows_.end()) fail(Errc::not_present, "list for point " + std::to_string(z));
  rows_.erase(it);
}

}  // namespace dynk
