#include "dynk/frac_kmedian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "dynk/errors.hpp"
#include "dynk/numeric.hpp"

namespace dynk {

FractionalKMedian::FractionalKMedian(const WeightedMetricSpace* space)
    : space_(space), ufl_(space) {}

double FractionalKMedian::LambdaGrid::lambda(int t) const {
  return low * std::pow(ratio, t - 1);
}

FractionalKMedian::LambdaGrid FractionalKMedian::grid(double epsilon) const {
  LambdaGrid g;
  g.low = space_->d_min() * space_->w_min() / 8.0;
  g.high = 2.0 * static_cast<double>(space_->size()) * space_->d_max() * space_->w_max();
  g.ratio = 1.0 + epsilon;
  g.count = 1 + static_cast<int>(std::ceil(std::log(g.high / g.low) / std::log(g.ratio)));
  while (g.lambda(g.count) < g.high) ++g.count;
  return g;
}

KMedianFractional FractionalKMedian::solve(int k, double epsilon) const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("k-median epsilon must lie in (0, 1)");
  std::size_t n = space_->size();
  if (n == 0) fail(Errc::empty_space, "k-median solve");
  if (k < 1 || static_cast<std::size_t>(k) > n)
    fail(Errc::k_out_of_range, "k=" + std::to_string(k) + " with n=" + std::to_string(n));

  KMedianFractional out;
  if (k == 1) {
    out.k_equals_one = true;
    if (n == 1) {
      out.y[space_->live().begin()->first] = 1.0;
      out.connection_cost = 0.0;
      return out;
    }
    double lambda = static_cast<double>(n) * space_->d_max() * space_->w_max() / 4.0;
    FractionalSolution sol = ufl_.solution(lambda);
    out.endpoint1 = sol;
    double cost = 0.0;
    for (const auto& [i, yi] : sol.y) {
      double scaled = yi / sol.open_mass;
      out.y[i] = scaled;
      double row = 0.0;  // every client pays its full distance to i, scaled by y_i
      for (const auto& [j, wj] : space_->live()) row += wj * space_->distance(i, j);
      cost += scaled * row;
    }
    out.connection_cost = cost;
    return out;
  }

  LambdaGrid g = grid(epsilon);
  double tol_k = kRelTol * std::max(1.0, static_cast<double>(k));
  std::map<int, double> mass_memo;
  auto mass_at = [&](int t) {
    auto it = mass_memo.find(t);
    if (it != mass_memo.end()) return it->second;
    double m = ufl_.open_mass(g.lambda(t));
    mass_memo.emplace(t, m);
    return m;
  };
  auto opens_k = [&](int t) { return mass_at(t) >= static_cast<double>(k) - tol_k; };

  int t = -1;
  if (opens_k(1) && !opens_k(g.count)) {
    int lo = 1, hi = g.count;  // opens_k(lo), !opens_k(hi)
    while (hi - lo > 1) {
      int mid = lo + (hi - lo) / 2;
      if (opens_k(mid))
        lo = mid;
      else
        hi = mid;
    }
    t = lo;
  } else {
    // The grid endpoints did not bracket k as expected; scan linearly.
    out.linear_fallback = true;
    for (int cand = 1; cand < g.count && t < 0; ++cand)
      if (opens_k(cand) && !opens_k(cand + 1)) t = cand;
    if (t < 0) fail(Errc::grid_search_failed, "no adjacent grid pair brackets k");
  }

  FractionalSolution s1 = ufl_.solution(g.lambda(t));
  FractionalSolution s2 = ufl_.solution(g.lambda(t + 1));
  out.endpoint1 = s1;
  out.endpoint2 = s2;
  out.grid_index = t;

  double m1 = s1.open_mass, m2 = s2.open_mass;
  if (std::abs(m1 - static_cast<double>(k)) <= tol_k) {
    out.alpha1 = 1.0;
    out.alpha2 = 0.0;
  } else {
    double a1 = (static_cast<double>(k) - m2) / (m1 - m2);
    out.alpha1 = std::clamp(a1, 0.0, 1.0);
    out.alpha2 = 1.0 - out.alpha1;
  }
  for (const auto& [i, y1] : s1.y) out.y[i] = out.alpha1 * y1 + out.alpha2 * s2.y.at(i);
  out.connection_cost = out.alpha1 * s1.connection_cost + out.alpha2 * s2.connection_cost;
  return out;
}

double FractionalKMedian::value_estimate(int k, double epsilon) const {
  return 3.0 * solve(k, epsilon).connection_cost;
}

}  // namespace dynk
