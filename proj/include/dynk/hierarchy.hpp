#ifndef DYNK_HIERARCHY_HPP
#define DYNK_HIERARCHY_HPP

#include <vector>

#include "dynk/local_search.hpp"
#include "dynk/metric_space.hpp"
#include "dynk/neighbor_lists.hpp"

namespace dynk {

struct HierarchyConfig {
  int k = 1;
  double epsilon = 0.5;  // requested; snapped to 1/levels with levels = round(1/epsilon)
  int p = 1;             // kPInfinity allowed; the search then runs at p = ceil(log2 n)
  LocalSearchParams search;
};

enum class UpdateKind { insert, erase };

// Nested center sets S_0 >= S_1 >= ... >= S_{l+1} with per-layer slack
// counters. Inserts are applied lazily to every layer; deletions leave the
// layers untouched (so layers may hold deleted points). Whenever a layer's
// counter exceeds its slack, that layer and everything below it is re-solved
// by restricted local search over the layer above. The bottom layer S_{l+1}
// (slack 0, rebuilt every update) is the maintained solution.
class CenterHierarchy {
 public:
  CenterHierarchy(WeightedMetricSpace* space, HierarchyConfig config);

  // Call after the space itself has been updated. Returns the new solution.
  const CenterSet& update(UpdateKind kind, PointId id);

  const CenterSet& current_solution() const { return layers_.back(); }
  double current_cost(int p) const;

  int levels() const { return levels_; }                  // l
  double effective_epsilon() const { return 1.0 / levels_; }
  long long slack(int i) const;                           // s_i for i in [-1, l+1]
  const std::vector<CenterSet>& layers() const { return layers_; }
  const std::vector<long long>& counters() const { return counters_; }

  struct UpdateStats {
    int rebuilt_from = -1;                 // -1 when nothing was rebuilt yet
    std::vector<long long> layer_recourse; // |S_i before ^ S_i after| per layer
  };
  const UpdateStats& last_stats() const { return stats_; }

  // Throws std::logic_error on any violated structural invariant
  // (nestedness, size bounds, bottom-layer shape).
  void check_invariants() const;

  // Drops retained payloads that no layer references anymore. Call once per
  // update, after consumers of the previous solution have synced.
  void collect_garbage();

 private:
  void reconstruct_from_layer(int from);
  void sync_list_candidates(int layer, const CenterSet& target);
  int search_p() const;

  WeightedMetricSpace* space_;
  HierarchyConfig config_;
  int levels_;
  std::vector<long long> slacks_;       // s_0 .. s_{l+1}
  std::vector<CenterSet> layers_;       // S_0 .. S_{l+1}
  std::vector<long long> counters_;     // tau_0 .. tau_{l+1}
  std::vector<NeighborLists> lists_;    // lists_[i] holds S_{i-1} (V for i = 0)
  UpdateStats stats_;
  std::uint64_t reconstruction_epoch_ = 0;
};

}  // namespace dynk

#endif  // DYNK_HIERARCHY_HPP
