#ifndef DYNK_FRAC_KMEDIAN_HPP
#define DYNK_FRAC_KMEDIAN_HPP

#include "dynk/frac_ufl.hpp"

namespace dynk {

struct KMedianFractional {
  std::map<PointId, double> y;
  double connection_cost = 0.0;
  double alpha1 = 1.0, alpha2 = 0.0;
  FractionalSolution endpoint1, endpoint2;  // endpoint2 unused when alpha2 = 0
  int grid_index = -1;                      // lower endpoint position on the grid
  bool k_equals_one = false;
  bool linear_fallback = false;             // binary-search bracket had to be rescanned
};

// Fractional k-median via a geometric grid of facility-opening costs over the
// fractional facility-location layer. A binary search brackets the opened
// mass around k between two adjacent grid values, whose solutions are mixed
// so the combined opening mass is exactly k; k = 1 takes a dedicated branch
// with a single large opening cost and normalized openings. Three times the
// resulting connection cost is a constant-factor estimate of the integral
// k-median optimum.
class FractionalKMedian {
 public:
  explicit FractionalKMedian(const WeightedMetricSpace* space);

  void on_insert(PointId j) { ufl_.on_insert(j); }
  void on_delete(PointId j) { ufl_.on_delete(j); }

  KMedianFractional solve(int k, double epsilon) const;
  double value_estimate(int k, double epsilon) const;

  struct LambdaGrid {
    double low = 0.0;   // d_min w_min / 8
    double high = 0.0;  // 2 n d_max w_max
    double ratio = 0.0;
    int count = 0;  // indices run 1..count with lambda(count) >= high
    double lambda(int t) const;
  };
  LambdaGrid grid(double epsilon) const;

  const FractionalUfl& ufl() const { return ufl_; }

 private:
  const WeightedMetricSpace* space_;
  FractionalUfl ufl_;
};

}  // namespace dynk

#endif  // DYNK_FRAC_KMEDIAN_HPP
