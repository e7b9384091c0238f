#ifndef DYNK_MASS_TREE_HPP
#define DYNK_MASS_TREE_HPP

#include <memory>
#include <tuple>
#include <vector>

#include "dynk/metric_space.hpp"

namespace dynk {

// Height-balanced search tree over (distance, mass) pairs keyed by
// (d, id), with per-subtree aggregates
//
//   q(T_u)   = sum of masses,
//   psi(u)   = sum of q_v d_v,
//   psi2(u)  = sum of q_v d_v^2,
//   phi(u)   = sum of q_v (d_max(T_u) - d_v),
//
// plus pointers to the extreme descendants. These support the mass, search
// and prefix queries needed to grow a ball around a point until a weighted
// slack target is met, all in O(log n).
class MassTree {
 public:
  struct Node {
    double d = 0.0;
    double q = 0.0;
    PointId id = 0;
    std::unique_ptr<Node> left, right;
    int height = 1;
    double q_sum = 0.0, psi = 0.0, psi2 = 0.0, phi = 0.0;
    const Node* min_node = nullptr;
    const Node* max_node = nullptr;
  };

  void insert(double d, double q, PointId id);
  void erase(double d, PointId id);

  const Node* root() const { return root_.get(); }
  std::size_t size() const { return size_; }

  // phi_eta(u) = phi(u) + eta * (d_max(T_u) - d_min(T_u)).
  static double mass_query(const Node* u, double eta);

  struct SearchResult {
    const Node* node;  // u* = last node (in order) whose prefix value stays below mu
    double phi;        // phi_eta(u, u*), the prefix value at u*
  };
  // Requires mu > 0; the minimum node always qualifies.
  static SearchResult search_query(const Node* u, double mu, double eta);

  // Total mass of nodes up to and including `target` (in order).
  static double compute_weight(const Node* u, const Node* target);

  struct Prefix {
    double q = 0.0, qd = 0.0, qd2 = 0.0;
  };
  // Aggregates over all nodes ordered <= target.
  Prefix prefix_through(const Node* target) const;

  // Recomputes every aggregate bottom-up and checks the stored values and the
  // balance property; throws std::logic_error on mismatch. Test hook.
  void audit() const;

  std::vector<std::tuple<double, double, PointId>> in_order() const;

 private:
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

}  // namespace dynk

#endif  // DYNK_MASS_TREE_HPP
