#ifndef DYNK_FRAC_UFL_HPP
#define DYNK_FRAC_UFL_HPP

#include <map>
#include <optional>

#include "dynk/radius_index.hpp"

namespace dynk {

struct FractionalSolution {
  std::map<PointId, double> y;  // fractional openings, each in [0, 1]
  double open_mass = 0.0;       // sum of y
  double connection_cost = 0.0;
  double lambda = 0.0;
};

// Fractional uniform facility location over a quarter-scaled radius index:
// y_i = w(i) r_i / lambda with the radii taken at scale 1/4, and the implied
// assignment sends each client to the points strictly inside its ball. The
// half-scaled index backs the dual certificate and is built only when a dual
// query is made.
class FractionalUfl {
 public:
  explicit FractionalUfl(const WeightedMetricSpace* space);

  void on_insert(PointId j);
  void on_delete(PointId j);

  FractionalSolution solution(double lambda) const;
  double open_mass(double lambda) const;
  // sum over clients of their fractional connection cost, without
  // materializing the assignment (O(n log n)).
  double connection_cost_total(double lambda) const;

  // Full assignment matrix x[j][i]; O(n^2), verification only.
  std::map<PointId, std::map<PointId, double>> materialize_assignment(double lambda) const;

  struct DualSolution {
    std::map<PointId, double> v;
    std::map<PointId, std::map<PointId, double>> w;  // w[j][i]
    double lambda = 0.0;
  };
  DualSolution dual_witness(double lambda) const;
  // sum_j w(j) r_j at scale 1/2; feasible dual objective, lower-bounds the
  // fractional facility-location optimum.
  double dual_value(double lambda) const;

  const RadiusIndex& quarter() const { return quarter_; }
  const RadiusIndex& half() const;

 private:
  void require_space(double lambda) const;

  const WeightedMetricSpace* space_;
  RadiusIndex quarter_;
  mutable std::optional<RadiusIndex> half_;
};

}  // namespace dynk

#endif  // DYNK_FRAC_UFL_HPP
