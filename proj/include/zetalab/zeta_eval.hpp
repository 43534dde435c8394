#pragma once

#include <complex>
#include <cstdint>

// Critical-line evaluation of the Riemann zeta function through the Hardy
// Z-function:
//
//     Z(t) = e^{i theta(t)} zeta(1/2 + it),      Z real, |Z| = |zeta|.
//
// Two independent routes are provided on purpose:
//
//   * z_function: Riemann-Siegel. Main sum of length floor(sqrt(t/2pi))
//     plus the asymptotic remainder
//         (-1)^{N-1} (t/2pi)^{-1/4} [ C0(p) + C1(p)(t/2pi)^{-1/2} + ... ],
//     p the fractional part of sqrt(t/2pi). The Cj are evaluated from
//     frozen Chebyshev tables (src/rs_cheb.inc). Measured absolute error
//     with the full C0..C2 remainder: <= 4e-6 at t = 64, <= 2e-7 from
//     t = 1000 up; the C1-only default is <= 1e-5 from t ~ 1000 up.
//   * euler_maclaurin_zeta_half: Euler-Maclaurin with O(terms + t) work.
//     Slow but formula-independent; serves as the oracle and as the
//     primary path below EvalConfig::crossover_t.
//
// For t > 1e5 the phase t*log n is reduced mod 2pi in double-double using
// a frozen table of ln n splits; plain double keeps ~1e-9 phase accuracy
// at t = 1e6, the paired-limb path keeps ~1e-16.

namespace zetalab {

struct EvalConfig {
  // Highest remainder function included: order k keeps C0..Ck. 0, 1 or 2.
  int rs_correction_order = 1;
  // Euler-Maclaurin length control; the internal cutoff is terms + ceil(t).
  int oracle_terms = 50;
  // Below this t the Euler-Maclaurin path is primary (Riemann-Siegel has
  // too few main-sum terms there to be trustworthy).
  double crossover_t = 30.0;

  // Profile used by grid builds and the verification suites: full
  // remainder, crossover high enough that the asymptotic error never
  // exceeds ~4e-6.
  static EvalConfig accurate() { return {2, 50, 64.0}; }

  void validate() const;        // throws std::invalid_argument
  std::uint64_t hash() const;   // stable fingerprint, keys grid caches
};

struct CriticalLinePoint {
  double t = 0.0;
  double z = 0.0;
  double zeta_sq = 0.0;
};

// zeta(1/2 + it) for |t| <= 1e4. Relative error <= 1e-9 away from zeros
// (absolute ~1e-12 near them) at the default length. Negative t is the
// complex conjugate by reflection. terms < 10 or |t| > 1e4 throw
// accuracy_error.
std::complex<double> euler_maclaurin_zeta_half(double t, int terms = 50);

// Rotation phase: theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
// Asymptotic expansion with three correction terms for t >= 10 (error
// < 3e-11 at t = 10, decreasing), log-Gamma below.
double theta(double t);

// Signed Hardy Z at t >= 0; |Z(t)| = |zeta(1/2+it)|.
double z_function(double t, const EvalConfig& cfg = {});

// Exactly z_function(t, cfg) squared, same rounding.
double zeta_sq(double t, const EvalConfig& cfg = {});

CriticalLinePoint eval_point(double t, const EvalConfig& cfg = {});

}  // namespace zetalab
