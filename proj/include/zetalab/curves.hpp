#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace zetalab {

// Uniformly sampled function values: v[i] sits at t0 + i*dt.
struct SampledCurve {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> v;
  std::string label;

  double t_max() const { return v.empty() ? t0 : t0 + dt * double(v.size() - 1); }
  bool covers(double a, double b) const;
};

// Cumulative integral F(t) = int_0^t f on a uniform grid, with the
// per-panel quadrature error estimates kept alongside; their sum is the
// budget a consumer can check against.
struct CumulativeIntegral {
  SampledCurve curve;
  std::vector<double> panel_error;  // one entry per panel, curve.v.size()-1
};

// Fixed-order pairwise reduction; result depends only on the element order,
// never on thread count, and carries O(log n) rounding growth.
double pairwise_sum(std::span<const double> xs);

// Trapezoid integral of the curve between a and b (grid-partial ends are
// interpolated linearly). Throws coverage_error when [a,b] leaves the grid.
double trapezoid_between(const SampledCurve& c, double a, double b);

// Monotone cubic (Fritsch-Butland) interpolant on a uniform grid. Applied
// to a monotone sample set the evaluation stays within each cell's value
// interval, so cumulative integrals never pick up spurious wiggles.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(double t0, double dt, std::span<const double> values);
  double operator()(double t) const;  // throws coverage_error off-grid
  bool valid() const { return !v_.empty(); }

 private:
  double t0_ = 0.0, dt_ = 0.0;
  std::vector<double> v_, slope_;
};

}  // namespace zetalab
