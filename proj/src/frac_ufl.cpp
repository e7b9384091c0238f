#include "dynk/frac_ufl.hpp"

#include <algorithm>

#include "dynk/errors.hpp"

namespace dynk {

FractionalUfl::FractionalUfl(const WeightedMetricSpace* space)
    : space_(space), quarter_(space, 0.25) {}

void FractionalUfl::on_insert(PointId j) {
  quarter_.on_insert(j);
  if (half_) half_->on_insert(j);
}

void FractionalUfl::on_delete(PointId j) {
  quarter_.on_delete(j);
  if (half_) half_->on_delete(j);
}

const RadiusIndex& FractionalUfl::half() const {
  if (!half_) half_.emplace(space_, 0.5);
  return *half_;
}

void FractionalUfl::require_space(double lambda) const {
  if (space_->size() == 0) fail(Errc::empty_space, "facility-location query");
  if (!(lambda > 0.0)) fail(Errc::nonpositive_lambda, "facility-location query");
}

FractionalSolution FractionalUfl::solution(double lambda) const {
  require_space(lambda);
  FractionalSolution out;
  out.lambda = lambda;
  for (const auto& [i, w] : space_->live()) {
    auto [r, c] = quarter_.radius_and_connection(i, lambda);
    double yi = w * r / lambda;
    out.y[i] = yi;
    out.open_mass += yi;
    out.connection_cost += 4.0 * c;
  }
  return out;
}

double FractionalUfl::open_mass(double lambda) const {
  require_space(lambda);
  double mass = 0.0;
  for (const auto& [i, w] : space_->live()) mass += w * quarter_.radius(i, lambda) / lambda;
  return mass;
}

double FractionalUfl::connection_cost_total(double lambda) const {
  require_space(lambda);
  double total = 0.0;
  for (const auto& [i, w] : space_->live()) {
    (void)w;
    total += 4.0 * quarter_.connection_cost(i, lambda);
  }
  return total;
}

std::map<PointId, std::map<PointId, double>> FractionalUfl::materialize_assignment(
    double lambda) const {
  require_space(lambda);
  std::map<PointId, std::map<PointId, double>> x;
  for (const auto& [j, wj] : space_->live()) {
    (void)wj;
    double rj = quarter_.radius(j, lambda);
    auto& row = x[j];
    for (const auto& [i, wi] : space_->live()) {
      double slack = rj - 0.25 * space_->distance(i, j);
      row[i] = slack > 0.0 ? wi * slack / lambda : 0.0;
    }
  }
  return x;
}

FractionalUfl::DualSolution FractionalUfl::dual_witness(double lambda) const {
  require_space(lambda);
  const RadiusIndex& h = half();
  DualSolution dual;
  dual.lambda = lambda;
  for (const auto& [j, wj] : space_->live()) {
    double rj = h.radius(j, lambda);
    dual.v[j] = wj * rj;
    auto& row = dual.w[j];
    for (const auto& [i, wi] : space_->live()) {
      (void)wi;
      row[i] = std::max(0.0, wj * (rj - space_->distance(i, j)));
    }
  }
  return dual;
}

double FractionalUfl::dual_value(double lambda) const {
  require_space(lambda);
  const RadiusIndex& h = half();
  double total = 0.0;
  for (const auto& [j, wj] : space_->live()) total += wj * h.radius(j, lambda);
  return total;
}

}  // namespace dynk
