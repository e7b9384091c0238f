#ifndef DYNK_ORACLES_HPP
#define DYNK_ORACLES_HPP

#include "dynk/metric_space.hpp"

namespace dynk {

// Brute-force reference implementations. Deliberately slow and simple; these
// ground the expected values asserted elsewhere, so they must stay
// independent of the production data structures.

struct BruteClustering {
  CenterSet centers;
  double cost;
};

// Exact optimum over all proper center sets of size min(k, n). n <= 24.
BruteClustering brute_opt_clustering(const WeightedMetricSpace& space, int k, int p);

struct BruteUfl {
  CenterSet centers;
  double cost;
};

// Exact optimal integral uniform facility location solution. n <= 20.
BruteUfl brute_opt_ufl(const WeightedMetricSpace& space, double lambda);

struct BruteRadius {
  double r;  // ball-growing radius in the beta-scaled metric
  double c;  // fractional connection cost of that ball
};

// Solves the piecewise-linear ball-growing equation around i by sorting the
// scaled distances, then evaluates the connection-cost sum definitionally.
BruteRadius brute_radius(const WeightedMetricSpace& space, PointId i, double lambda, double beta);

// True iff no single swap S + x - y (x in X \ S, y in S + x) strictly
// decreases the unnormalized cost beyond tolerance.
bool brute_local_optimum_check(const WeightedMetricSpace& space, const CenterSet& s,
                               const CenterSet& x, int p);

}  // namespace dynk

#endif  // DYNK_ORACLES_HPP
