#pragma once

#include <cstdint>
#include <string>

#include "zetalab/curves.hpp"
#include "zetalab/divisor.hpp"
#include "zetalab/zeta_eval.hpp"

// Second-moment error terms on the critical line:
//
//     E(T)  = int_0^T |zeta(1/2+it)|^2 dt - T(log(T/2pi) + 2 gamma - 1)
//     E*(t) = E(t) - 2 pi Delta*(t / 2pi)
//     R(T)  = int_0^T E*(t) dt - (3 pi / 4) T
//
// The cumulative |zeta|^2 integral is built once on a uniform grid from
// t = 0 (anchoring E(0) = 0) by per-panel 8-node Gauss-Legendre plus a
// sequential prefix pass; panel errors are estimated from a 4-node
// half-panel comparison. Off-node E(t) is served by monotone cubic
// interpolation of the smooth cumulative, then main-term subtraction;
// interpolating oscillatory E directly would cost ~3 digits.

namespace zetalab {

// Smooth comparison term T(log(T/2pi) + 2 gamma - 1); T = 0 gives 0,
// negative T throws std::domain_error. Out-of-line so every module
// subtracts the same rounding.
double second_moment_main_term(double T);

struct ErrorGrid {
  CumulativeIntegral cumulative;  // int_0^t |zeta(1/2+iu)|^2 du at nodes
  SampledCurve e;                 // E(t) on the same nodes
  SampledCurve zsq;               // |zeta(1/2+it)|^2 at the nodes themselves
  EvalConfig eval;                // how the integrand was sampled

  // Uniform panels of width dt from 0 to >= t_max. dt must resolve the
  // local oscillation: the mean zero gap near T is 2pi/log(T/2pi), so
  // dt > 2pi/log(t_max/2pi) throws std::invalid_argument.
  static ErrorGrid build(double t_max, double dt, const EvalConfig& cfg,
                         unsigned threads = 1);

  double E(double t) const;  // cubic on cumulative, then main term
  double t_max() const { return e.t_max(); }

  // Refresh the cumulative interpolant after the arrays change (build and
  // cache load both end with this).
  void rebuild_interpolant();

 private:
  MonotoneCubic interp_;  // derived data, not serialized
};

// E, E* and the R running integral on one grid. Delta* needs divisor
// data up to 4*t_max/2pi; an undersized table throws coverage_error.
struct ErrorTermBundle {
  ErrorGrid grid;
  SampledCurve two_pi_delta_star;  // 2pi Delta*(t/2pi) on the nodes
  SampledCurve estar;              // E*(t)
  SampledCurve r;                  // R(t), trapezoid prefix of E* minus (3pi/4)t

  static ErrorTermBundle build(double t_max, double dt, const EvalConfig& cfg,
                               const DivisorTable& table, unsigned threads = 1);

  // Little-endian cache: magic "EGRD", u64 count, f64 t0, f64 dt, then
  // f64 arrays cumulative, E, E*, R. The zsq samples and panel errors
  // ride in a sidecar (save_aux/load_aux) so this file stays exactly the
  // published layout. load() alone leaves those fields empty.
  void save(const std::string& path) const;
  static ErrorTermBundle load(const std::string& path);
  void save_aux(const std::string& path) const;   // magic "ZSQG"
  void load_aux(const std::string& path);
};

}  // namespace zetalab
