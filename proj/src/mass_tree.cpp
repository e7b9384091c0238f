#include "dynk/mass_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"

namespace dynk {

namespace {

using Node = MassTree::Node;
using NodePtr = std::unique_ptr<Node>;

int height(const Node* n) { return n ? n->height : 0; }
double q_sum(const Node* n) { return n ? n->q_sum : 0.0; }

bool key_less(double d1, PointId id1, double d2, PointId id2) {
  return d1 < d2 || (d1 == d2 && id1 < id2);
}

void pull(Node* n) {
  const Node* l = n->left.get();
  const Node* r = n->right.get();
  n->height = 1 + std::max(height(l), height(r));
  n->q_sum = n->q + q_sum(l) + q_sum(r);
  n->psi = n->q * n->d + (l ? l->psi : 0.0) + (r ? r->psi : 0.0);
  n->psi2 = n->q * n->d * n->d + (l ? l->psi2 : 0.0) + (r ? r->psi2 : 0.0);
  n->min_node = l ? l->min_node : n;
  n->max_node = r ? r->max_node : n;
  double top = n->max_node->d;
  double phi = n->q * (top - n->d);
  if (l) phi += l->phi + l->q_sum * (top - l->max_node->d);
  if (r) phi += r->phi;  // the right child shares the subtree maximum
  n->phi = phi;
}

NodePtr rotate_right(NodePtr n) {
  NodePtr l = std::move(n->left);
  n->left = std::move(l->right);
  pull(n.get());
  l->right = std::move(n);
  pull(l.get());
  return l;
}

NodePtr rotate_left(NodePtr n) {
  NodePtr r = std::move(n->right);
  n->right = std::move(r->left);
  pull(n.get());
  r->left = std::move(n);
  pull(r.get());
  return r;
}

NodePtr rebalance(NodePtr n) {
  pull(n.get());
  int bf = height(n->left.get()) - height(n->right.get());
  if (bf > 1) {
    if (height(n->left->left.get()) < height(n->left->right.get()))
      n->left = rotate_left(std::move(n->left));
    return rotate_right(std::move(n));
  }
  if (bf < -1) {
    if (height(n->right->right.get()) < height(n->right->left.get()))
      n->right = rotate_right(std::move(n->right));
    return rotate_left(std::move(n));
  }
  return n;
}

NodePtr insert_node(NodePtr n, double d, double q, PointId id) {
  if (!n) {
    auto fresh = std::make_unique<Node>();
    fresh->d = d;
    fresh->q = q;
    fresh->id = id;
    pull(fresh.get());
    return fresh;
  }
  if (key_less(d, id, n->d, n->id))
    n->left = insert_node(std::move(n->left), d, q, id);
  else if (key_less(n->d, n->id, d, id))
    n->right = insert_node(std::move(n->right), d, q, id);
  else
    fail(Errc::already_present, "tree key (d=" + std::to_string(d) + ", id=" + std::to_string(id) + ")");
  return rebalance(std::move(n));
}

// Detaches the in-order minimum of the subtree.
NodePtr pop_min(NodePtr n, NodePtr* out) {
  if (!n->left) {
    *out = std::move(n);
    NodePtr rest = std::move((*out)->right);
    return rest;
  }
  n->left = pop_min(std::move(n->left), out);
  return rebalance(std::move(n));
}

NodePtr erase_node(NodePtr n, double d, PointId id, bool* erased) {
  if (!n) {
    *erased = false;
    return n;
  }
  if (key_less(d, id, n->d, n->id)) {
    n->left = erase_node(std::move(n->left), d, id, erased);
  } else if (key_less(n->d, n->id, d, id)) {
    n->right = erase_node(std::move(n->right), d, id, erased);
  } else {
    *erased = true;
    if (!n->left) return std::move(n->right);
    if (!n->right) return std::move(n->left);
    NodePtr successor;
    n->right = pop_min(std::move(n->right), &successor);
    successor->left = std::move(n->left);
    successor->right = std::move(n->right);
    return rebalance(std::move(successor));
  }
  return rebalance(std::move(n));
}

}  // namespace

void MassTree::insert(double d, double q, PointId id) {
  root_ = insert_node(std::move(root_), d, q, id);
  ++size_;
}

void MassTree::erase(double d, PointId id) {
  bool erased = false;
  root_ = erase_node(std::move(root_), d, id, &erased);
  if (!erased)
    fail(Errc::not_present, "tree key (d=" + std::to_string(d) + ", id=" + std::to_string(id) + ")");
  --size_;
}

double MassTree::mass_query(const Node* u, double eta) {
  return u->phi + eta * (u->max_node->d - u->min_node->d);
}

MassTree::SearchResult MassTree::search_query(const Node* u, double mu, double eta) {
  const Node* v = u->left.get();
  const Node* w = u->right.get();
  double d_lo = u->min_node->d;

  // Prefix values at the three local milestones, from stored aggregates.
  double phi_u_vplus = v ? v->phi : 0.0;  // phi(u, v+) = phi(v)
  double phi_u_u = phi_u_vplus + (v ? (u->d - v->max_node->d) * v->q_sum : 0.0);
  if (v) {
    double at_vplus = phi_u_vplus + eta * (v->max_node->d - d_lo);
    if (at_vplus >= mu) return search_query(v, mu, eta);
    if (phi_u_u + eta * (u->d - d_lo) >= mu) return {v->max_node, at_vplus};
  }
  double phi_eta_u_u = phi_u_u + eta * (u->d - d_lo);
  if (!w) return {u, phi_eta_u_u};
  double phi_u_wminus = phi_u_u + (w->min_node->d - u->d) * (q_sum(v) + u->q);
  double at_wminus = phi_u_wminus + eta * (w->min_node->d - d_lo);
  if (at_wminus >= mu) return {u, phi_eta_u_u};
  // The target lies in the right subtree; shift the threshold by the prefix
  // consumed so far and fold the left mass into eta.
  SearchResult sub = search_query(w, mu - at_wminus, eta + u->q + q_sum(v));
  sub.phi += at_wminus;
  return sub;
}

double MassTree::compute_weight(const Node* u, const Node* target) {
  if (!u) return 0.0;
  if (!key_less(target->d, target->id, u->d, u->id))  // u <= target in order
    return u->q + q_sum(u->left.get()) + compute_weight(u->right.get(), target);
  return compute_weight(u->left.get(), target);
}

MassTree::Prefix MassTree::prefix_through(const Node* target) const {
  Prefix p;
  const Node* u = root_.get();
  while (u) {
    if (!key_less(target->d, target->id, u->d, u->id)) {
      p.q += u->q + q_sum(u->left.get());
      p.qd += u->q * u->d + (u->left ? u->left->psi : 0.0);
      p.qd2 += u->q * u->d * u->d + (u->left ? u->left->psi2 : 0.0);
      u = u->right.get();
    } else {
      u = u->left.get();
    }
  }
  return p;
}

namespace {

struct AuditOut {
  double q_sum, psi, psi2, phi;
  double d_min, d_max;
  std::size_t count;
};

AuditOut audit_node(const Node* n) {
  AuditOut out{n->q, n->q * n->d, n->q * n->d * n->d, 0.0, n->d, n->d, 1};
  if (n->left) {
    AuditOut l = audit_node(n->left.get());
    out.q_sum += l.q_sum;
    out.psi += l.psi;
    out.psi2 += l.psi2;
    out.d_min = std::min(out.d_min, l.d_min);
    out.count += l.count;
  }
  if (n->right) {
    AuditOut r = audit_node(n->right.get());
    out.q_sum += r.q_sum;
    out.psi += r.psi;
    out.psi2 += r.psi2;
    out.d_max = std::max(out.d_max, r.d_max);
    out.count += r.count;
  }
  out.phi = out.q_sum * out.d_max - out.psi;
  auto check = [&](double stored, double fresh, const char* what) {
    if (!approx_eq(stored, fresh, 1e-9, 1e-9))
      throw std::logic_error(std::string("mass tree aggregate mismatch: ") + what);
  };
  check(n->q_sum, out.q_sum, "q_sum");
  check(n->psi, out.psi, "psi");
  check(n->psi2, out.psi2, "psi2");
  check(n->phi, out.phi, "phi");
  if (n->min_node->d != out.d_min || n->max_node->d != out.d_max)
    throw std::logic_error("mass tree extreme-descendant pointers stale");
  int hl = n->left ? n->left->height : 0;
  int hr = n->right ? n->right->height : 0;
  if (n->height != 1 + std::max(hl, hr) || std::abs(hl - hr) > 1)
    throw std::logic_error("mass tree balance violated");
  return out;
}

}  // namespace

void MassTree::audit() const {
  if (!root_) {
    if (size_ != 0) throw std::logic_error("mass tree size mismatch");
    return;
  }
  AuditOut out = audit_node(root_.get());
  if (out.count != size_) throw std::logic_error("mass tree size mismatch");
}

std::vector<std::tuple<double, double, PointId>> MassTree::in_order() const {
  std::vector<std::tuple<double, double, PointId>> out;
  out.reserve(size_);
  std::vector<const Node*> stack;
  const Node* cur = root_.get();
  while (cur || !stack.empty()) {
    while (cur) {
      stack.push_back(cur);
      cur = cur->left.get();
    }
    cur = stack.back();
    stack.pop_back();
    out.emplace_back(cur->d, cur->q, cur->id);
    cur = cur->right.get();
  }
  return out;
}

}  // namespace dynk
