#include "zetalab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"

namespace zetalab {

namespace {
// Half-step slack absorbs the rounding of (t - t0)/dt at window ends.
bool in_range(const SampledCurve& c, double t) {
  return t >= c.t0 - 0.5 * c.dt && t <= c.t_max() + 0.5 * c.dt;
}

[[noreturn]] void coverage_fail(const SampledCurve& c, double a, double b) {
  throw coverage_error("requested [" + g17(a) + ", " + g17(b) +
                       "] outside grid [" + g17(c.t0) + ", " +
                       g17(c.t_max()) + "]");
}
}  // namespace

bool SampledCurve::covers(double a, double b) const {
  return !v.empty() && dt > 0 && a >= t0 - 0.5 * dt && b <= t_max() + 0.5 * dt &&
         a <= b;
}

double pairwise_sum(std::span<const double> xs) {
  // recursion bottoms out on runs short enough that order cannot matter
  // much; 32 keeps the depth shallow without a per-element call chain
  if (xs.size() <= 32) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double trapezoid_between(const SampledCurve& c, double a, double b) {
  if (c.v.size() < 2 || c.dt <= 0) throw coverage_error("empty curve");
  if (b < a) std::swap(a, b);
  if (!in_range(c, a) || !in_range(c, b)) coverage_fail(c, a, b);

  auto value_at = [&](std::size_t i) { return c.v[i]; };
  auto interp = [&](double t) {
    double x = (t - c.t0) / c.dt;
    double fi = std::floor(x);
    std::size_t i = (std::size_t)std::clamp<double>(fi, 0.0, double(c.v.size() - 2));
    double frac = x - double(i);
    return c.v[i] + frac * (c.v[i + 1] - c.v[i]);
  };

  double xa = (a - c.t0) / c.dt;
  double xb = (b - c.t0) / c.dt;
  // first node at or after a, last node at or before b
  std::size_t ia = (std::size_t)std::clamp<double>(std::ceil(xa - 1e-9), 0.0,
                                                   double(c.v.size() - 1));
  std::size_t ib = (std::size_t)std::clamp<double>(std::floor(xb + 1e-9), 0.0,
                                                   double(c.v.size() - 1));
  if (ia > ib) {
    // both ends inside one cell
    return 0.5 * (interp(a) + interp(b)) * (b - a);
  }

  double ta = c.t0 + double(ia) * c.dt;
  double tb = c.t0 + double(ib) * c.dt;
  double total = 0.0;
  if (a < ta) total += 0.5 * (interp(a) + value_at(ia)) * (ta - a);
  if (b > tb) total += 0.5 * (value_at(ib) + interp(b)) * (b - tb);
  if (ib > ia) {
    // interior trapezoid: dt * (half ends + full middles), summed pairwise
    std::span<const double> mid(c.v.data() + ia, ib - ia + 1);
    double s = pairwise_sum(mid.subspan(1, mid.size() - 2));
    s += 0.5 * (mid.front() + mid.back());
    total += s * c.dt;
  }
  return total;
}

// --- monotone cubic ---------------------------------------------------

MonotoneCubic::MonotoneCubic(double t0, double dt, std::span<const double> values)
    : t0_(t0), dt_(dt), v_(values.begin(), values.end()) {
  std::size_t n = v_.size();
  slope_.assign(n, 0.0);
  if (n < 2 || dt <= 0) {
    v_.clear();
    return;
  }
  // Fritsch-Butland: harmonic-mean slopes, zeroed at local extrema; the
  // resulting cubic never leaves the cell's value interval
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (v_[i + 1] - v_[i]) / dt_;
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      slope_[i] = 0.0;
    } else {
      slope_[i] = 3.0 * (d[i - 1] * d[i]) / (std::max(d[i - 1], d[i]) +
                                             2.0 * std::min(d[i - 1], d[i]));
      if (d[i - 1] < 0.0)  // both negative: formula above assumed positive
        slope_[i] = 3.0 * (d[i - 1] * d[i]) / (std::min(d[i - 1], d[i]) +
                                               2.0 * std::max(d[i - 1], d[i]));
    }
  }
}

double MonotoneCubic::operator()(double t) const {
  if (v_.empty()) throw coverage_error("uninitialized interpolant");
  double x = (t - t0_) / dt_;
  if (x < -1e-9 || x > double(v_.size() - 1) + 1e-9)
    throw coverage_error("interpolation point " + g17(t) + " off grid");
  std::size_t i = (std::size_t)std::clamp<double>(std::floor(x), 0.0,
                                                  double(v_.size() - 2));
  double u = x - double(i);  // in [0,1]
  double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  double h10 = u * (1.0 - u) * (1.0 - u);
  double h01 = u * u * (3.0 - 2.0 * u);
  double h11 = u * u * (u - 1.0);
  return h00 * v_[i] + h10 * dt_ * slope_[i] + h01 * v_[i + 1] +
         h11 * dt_ * slope_[i + 1];
}

}  // namespace zetalab
