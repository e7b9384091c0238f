#include "dynk/projection.hpp"

#include <stdexcept>
#include <string>

#include "dynk/errors.hpp"

namespace dynk {

DynamicProjection::DynamicProjection(const WeightedMetricSpace* space) : space_(space) {}

std::vector<PointId> DynamicProjection::order() const {
  std::vector<PointId> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.y);
  return out;
}

void DynamicProjection::refresh_lambda() {
  lambda_.clear();
  for (const Entry& e : entries_)
    if (e.choice) lambda_.insert(*e.choice);
}

DynamicProjection::Delta DynamicProjection::finish(const CenterSet& before) {
  refresh_lambda();
  Delta d;
  for (PointId x : lambda_)
    if (!before.count(x)) d.added.push_back(x);
  for (PointId x : before)
    if (!lambda_.count(x)) d.removed.push_back(x);
  return d;
}

void DynamicProjection::forward_scan(std::size_t start, std::set<PointId> to_add,
                                     std::set<PointId> to_rem) {
  for (std::size_t i = start; i < entries_.size(); ++i) {
    if (to_add.empty() && to_rem.empty()) break;
    Entry& e = entries_[i];
    for (PointId a : to_add) e.avail.emplace(space_->distance(e.y, a), a);
    for (PointId r : to_rem) e.avail.erase({space_->distance(e.y, r), r});

    std::optional<PointId> fresh;
    if (!e.avail.empty()) fresh = e.avail.begin()->second;
    if (fresh == e.choice) continue;

    // The consumed point leaves the downstream lists, the released one
    // rejoins them; insertions and removals cancel pairwise.
    std::optional<PointId> old = e.choice;
    e.choice = fresh;
    if (fresh) {
      if (to_add.count(*fresh))
        to_add.erase(*fresh);
      else
        to_rem.insert(*fresh);
    }
    if (old) {
      if (to_rem.count(*old))
        to_rem.erase(*old);
      else
        to_add.insert(*old);
    }
  }
}

DynamicProjection::Delta DynamicProjection::apply_A_insert(PointId y) {
  for (const Entry& e : entries_)
    if (e.y == y) fail(Errc::membership_violation, "A already holds " + std::to_string(y));
  Entry e;
  e.y = y;
  for (PointId b : b_)
    if (!lambda_.count(b)) e.avail.emplace(space_->distance(y, b), b);
  if (!e.avail.empty()) e.choice = e.avail.begin()->second;
  CenterSet before = lambda_;
  entries_.push_back(std::move(e));
  Delta d = finish(before);
  if (d.size() > 1) throw std::logic_error("A-insert moved more than one projection point");
  return d;
}

DynamicProjection::Delta DynamicProjection::apply_A_delete(PointId y) {
  std::size_t j = entries_.size();
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].y == y) {
      j = i;
      break;
    }
  if (j == entries_.size()) fail(Errc::membership_violation, "A does not hold " + std::to_string(y));
  CenterSet before = lambda_;
  std::optional<PointId> released = entries_[j].choice;
  entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(j));
  if (released) forward_scan(j, {*released}, {});
  Delta d = finish(before);
  if (d.size() > 1) throw std::logic_error("A-delete moved more than one projection point");
  return d;
}

DynamicProjection::Delta DynamicProjection::apply_B_insert(PointId x) {
  if (b_.count(x)) fail(Errc::membership_violation, "B already holds " + std::to_string(x));
  CenterSet before = lambda_;
  b_.insert(x);
  forward_scan(0, {x}, {});
  Delta d = finish(before);
  if (d.size() > 2) throw std::logic_error("B-insert moved more than two projection points");
  return d;
}

DynamicProjection::Delta DynamicProjection::apply_B_delete(PointId x) {
  if (!b_.count(x)) fail(Errc::membership_violation, "B does not hold " + std::to_string(x));
  CenterSet before = lambda_;
  b_.erase(x);
  forward_scan(0, {}, {x});
  Delta d = finish(before);
  if (d.size() > 2) throw std::logic_error("B-delete moved more than two projection points");
  return d;
}

CenterSet DynamicProjection::recompute_from_scratch() const {
  CenterSet taken;
  for (const Entry& e : entries_) {
    PointId best = 0;
    double best_d = 0.0;
    bool found = false;
    for (PointId b : b_) {
      if (taken.count(b)) continue;
      double d = space_->distance(e.y, b);
      if (!found || d < best_d) {
        found = true;
        best_d = d;
        best = b;
      }
    }
    if (found) taken.insert(best);
  }
  return taken;
}

}  // namespace dynk
