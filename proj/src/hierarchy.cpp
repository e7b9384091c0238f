#include "dynk/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"
#include "dynk/objective.hpp"

namespace dynk {

namespace {

long long symmetric_difference_size(const CenterSet& a, const CenterSet& b) {
  long long n = 0;
  for (PointId x : a) n += !b.count(x);
  for (PointId x : b) n += !a.count(x);
  return n;
}

}  // namespace

CenterHierarchy::CenterHierarchy(WeightedMetricSpace* space, HierarchyConfig config)
    : space_(space), config_(std::move(config)) {
  if (config_.k < 1) fail(Errc::k_out_of_range, "hierarchy k");
  levels_ = std::max(1, static_cast<int>(std::lround(1.0 / config_.epsilon)));
  double eps_eff = 1.0 / levels_;
  slacks_.resize(levels_ + 2);
  for (int i = 0; i <= levels_; ++i)
    slacks_[i] = static_cast<long long>(
        std::floor(std::pow(static_cast<double>(config_.k), (levels_ - i) * eps_eff) + 1e-9));
  slacks_[levels_ + 1] = 0;

  layers_.assign(levels_ + 2, {});
  counters_.assign(levels_ + 2, 0);
  lists_.assign(levels_ + 2, NeighborLists(space_));
  for (const auto& [id, w] : space_->live()) {
    (void)w;
    for (auto& l : lists_) l.on_point_inserted(id);
    lists_[0].add_candidate(id);
  }
  if (space_->size() > 0) reconstruct_from_layer(0);
}

long long CenterHierarchy::slack(int i) const {
  if (i == -1)
    return static_cast<long long>(std::floor(
        std::pow(static_cast<double>(config_.k), (levels_ + 1) * (1.0 / levels_)) + 1e-9));
  return slacks_.at(i);
}

int CenterHierarchy::search_p() const {
  if (config_.p != kPInfinity) return config_.p;
  double n = static_cast<double>(std::max<std::size_t>(space_->size(), 2));
  return std::max(1, static_cast<int>(std::ceil(std::log2(n))));
}

void CenterHierarchy::sync_list_candidates(int layer, const CenterSet& target) {
  NeighborLists& l = lists_[layer];
  std::vector<PointId> to_remove, to_add;
  for (PointId c : l.candidates())
    if (!target.count(c)) to_remove.push_back(c);
  for (PointId c : target)
    if (!l.candidates().count(c)) to_add.push_back(c);
  for (PointId c : to_remove) l.remove_candidate(c);
  for (PointId c : to_add) l.add_candidate(c);
}

void CenterHierarchy::reconstruct_from_layer(int from) {
  stats_.rebuilt_from = from;
  for (int i = from; i <= levels_ + 1; ++i) {
    const CenterSet x = (i == 0) ? space_->live_ids() : layers_[i - 1];
    long long target = config_.k + slacks_[i];
    CenterSet next;
    if (static_cast<long long>(x.size()) <= target) {
      next = x;
    } else {
      LocalSearchParams params = config_.search;
      params.p = search_p();
      params.seed = mix_seed(config_.search.seed, ++reconstruction_epoch_ * 31 + i);
      next = randomized_local_search(*space_, x, static_cast<int>(target), params, lists_[i]);
    }
    layers_[i] = std::move(next);
    counters_[i] = 0;
    if (i + 1 <= levels_ + 1) sync_list_candidates(i + 1, layers_[i]);
  }
}

void CenterHierarchy::collect_garbage() {
  // Payloads of deleted points stay alive only while some layer references
  // them. Callers sync any consumers of the previous solution first.
  CenterSet referenced;
  for (const auto& layer : layers_) referenced.insert(layer.begin(), layer.end());
  space_->collect_garbage(referenced);
}

const CenterSet& CenterHierarchy::update(UpdateKind kind, PointId id) {
  stats_ = UpdateStats{};
  stats_.layer_recourse.assign(levels_ + 2, 0);
  std::vector<CenterSet> before = layers_;

  if (kind == UpdateKind::insert) {
    for (int i = 0; i <= levels_ + 1; ++i) layers_[i].insert(id);
    for (auto& l : lists_) l.on_point_inserted(id);
    lists_[0].add_candidate(id);
    for (int i = 1; i <= levels_ + 1; ++i) lists_[i].add_candidate(id);
  } else {
    for (auto& l : lists_) l.on_point_deleted(id);
    lists_[0].remove_candidate(id);  // layer-0 candidates track the live space
  }

  for (int i = 0; i <= levels_ + 1; ++i) {
    ++counters_[i];
    if (counters_[i] > slacks_[i]) {
      reconstruct_from_layer(i);
      break;
    }
  }

  for (int i = 0; i <= levels_ + 1; ++i)
    stats_.layer_recourse[i] = symmetric_difference_size(before[i], layers_[i]);
  return layers_.back();
}

double CenterHierarchy::current_cost(int p) const {
  if (space_->size() == 0) return 0.0;
  return clustering_cost(*space_, layers_.back(), p);
}

void CenterHierarchy::check_invariants() const {
  const CenterSet live = space_->live_ids();
  for (int i = 0; i <= levels_; ++i)
    if (!std::includes(layers_[i].begin(), layers_[i].end(), layers_[i + 1].begin(),
                       layers_[i + 1].end()))
      throw std::logic_error("hierarchy layers not nested at layer " + std::to_string(i + 1));
  if (!std::includes(layers_[0].begin(), layers_[0].end(), live.begin(), live.end())) {
    // S_0 contains V whenever it ever collapsed to the whole space; otherwise
    // S_0 was produced by a restricted solve of size >= k + s_0.
    if (static_cast<long long>(layers_[0].size()) < config_.k + slacks_[0])
      throw std::logic_error("layer 0 neither large nor covering the live space");
  }
  for (int i = 0; i <= levels_ + 1; ++i) {
    auto size = static_cast<long long>(layers_[i].size());
    if (size > config_.k + 2 * slacks_[i])
      throw std::logic_error("layer " + std::to_string(i) + " exceeds k + 2 s_i");
    if (size < config_.k + slacks_[i]) {
      if (layers_[i] != layers_[0])
        throw std::logic_error("small layer " + std::to_string(i) + " differs from layer 0");
      if (!std::includes(layers_[0].begin(), layers_[0].end(), live.begin(), live.end()))
        throw std::logic_error("small layer chain does not cover the live space");
    }
  }
  auto bottom = static_cast<long long>(layers_.back().size());
  if (bottom != config_.k &&
      !(static_cast<long long>(live.size()) < config_.k &&
        std::includes(layers_.back().begin(), layers_.back().end(), live.begin(), live.end())))
    throw std::logic_error("bottom layer is neither size k nor a cover of a small live space");
}

}  // namespace dynk
