#ifndef DYNK_NUMERIC_HPP
#define DYNK_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dynk {

// Global comparison tolerances: absolute 1e-12, relative 1e-9.
inline constexpr double kAbsTol = 1e-12;
inline constexpr double kRelTol = 1e-9;

inline bool approx_eq(double a, double b, double abs_tol = kAbsTol, double rel_tol = kRelTol) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

// a <= b up to tolerance.
inline bool approx_le(double a, double b, double abs_tol = kAbsTol, double rel_tol = kRelTol) {
  return a <= b + abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

// x^p for integer p >= 0 by repeated squaring.
inline double ipow(double x, int p) {
  double r = 1.0;
  while (p > 0) {
    if (p & 1) r *= x;
    x *= x;
    p >>= 1;
  }
  return r;
}

// Counter-style 64-bit generator (splitmix64); the output stream is a pure
// function of the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL));
  return g.next();
}

}  // namespace dynk

#endif  // DYNK_NUMERIC_HPP
