#pragma once

#include <cmath>

// Minimal double-double (paired-limb) helpers. Only what the oscillatory
// phase reduction needs: error-free sum/product and reduction mod 2*pi.
// Invariant for a dd value {hi, lo}: hi + lo is the intended number and
// |lo| <= ulp(hi)/2, so hi alone is the correctly rounded double.

namespace zetalab {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(dd a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

// a * b where b is a dd constant and a is an exact double (e.g. an
// integer-valued t); result keeps ~106 bits.
inline dd dd_mul(double a, dd b) {
  dd p = two_prod(a, b.hi);
  p.lo = std::fma(a, b.lo, p.lo);
  return quick_two_sum(p.hi, p.lo);
}

inline constexpr dd k_two_pi_dd{6.283185307179586, 2.4492935982947064e-16};

// x mod 2*pi, computed in dd so the reduced phase keeps full double
// accuracy even when x is ~1e7. Result is in roughly [-pi, pi].
inline double dd_mod_two_pi(dd x) {
  double k = std::nearbyint(x.hi / k_two_pi_dd.hi);
  dd kk = dd_mul(-k, k_two_pi_dd);
  dd r = dd_add(x, kk);
  return r.hi + r.lo;
}

}  // namespace zetalab
