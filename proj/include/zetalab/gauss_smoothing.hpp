#pragma once

#include <complex>
#include <functional>

#include "zetalab/curves.hpp"
#include "zetalab/error_terms.hpp"

// Gaussian-smoothed local moments
//
//     J_k(t, G) = (1/(sqrt(pi) G)) int |zeta(1/2 + i(t+u))|^{2k}
//                                        e^{-(u/G)^2} du
//
// and, for k = 1, the equivalent representation through the corrected
// second-moment error term,
//
//     J_1(t, G) = (2/(sqrt(pi) G^3)) int x E*(t+x) e^{-(x/G)^2} dx
//                 + O(log^2 t),
//
// valid for t^eps <= G <= t^{1/3}. Both routes are kept and compared;
// the additive log^2 uncertainty of the second is reported as metadata,
// never folded into the value.
//
// All quadrature is trapezoid on uniform nodes. The integrands are
// (smooth) x (Gaussian), so the trapezoid converges spectrally; node
// doubling is the convergence check, not Richardson.

namespace zetalab {

struct SmoothingParams {
  double G = 1.0;           // smoothing width, > 0
  int k = 1;                // moment order in |zeta|^{2k}
  double trunc_mult = 8.0;  // integrate over [-G*trunc_mult, G*trunc_mult]
  int nodes_per_G = 64;     // quadrature spacing G / nodes_per_G

  // trunc_mult = log T (so the window is +-G log T); relative truncation
  // error e^{-trunc_mult^2} then beats any power of T.
  static SmoothingParams paper_mode(double T, int k = 1, double G = 1.0);

  void validate() const;  // throws std::invalid_argument
};

// sqrt(pi/B) exp(A^2 / 4B), the closed form of int exp(At - Bt^2) dt.
// Re B <= 0 throws std::domain_error. Real overload provided since most
// call sites are real.
std::complex<double> gaussian_integral(std::complex<double> A,
                                       std::complex<double> B);
double gaussian_integral(double A, double B);

// |zeta(1/2 + it)|^2 suppliers for j_k_direct. The curve-backed source
// interpolates linearly and throws coverage_error off the grid; the
// eval-backed source computes points fresh.
using ZetaSqSource = std::function<double(double)>;
ZetaSqSource eval_source(const EvalConfig& cfg);
ZetaSqSource curve_source(const SampledCurve& zsq);

// J_k by direct trapezoid over the truncated window. Spacing
// G / nodes_per_G; needs t - G*trunc_mult >= 0 (invalid_argument
// otherwise). Coverage errors from the source propagate.
double j_k_direct(double t, const SmoothingParams& p,
                  const ZetaSqSource& zeta_sq_source);

struct J1EstarResult {
  double value = 0.0;        // the x E* integral term
  double uncertainty = 0.0;  // log^2 t, the scale of the additive slack
};

// E*-route J_1. G must lie in [t^0.01, t^{1/3}] (std::range_error
// outside; the representation is only valid there) and the bundle must
// cover [t - G*trunc_mult, t + G*trunc_mult]. E* is read at nearest
// node when the grid step is <= G/256, else by monotone cubic.
J1EstarResult j1_via_estar(double t, const SmoothingParams& p,
                           const ErrorTermBundle& bundle);

// J_1 evaluated at every source node in [t_lo, t_hi] by discrete
// Gaussian convolution on the source lattice itself. The lattice step
// already resolves |zeta|^2 (it must, to have built the grid), so this
// matches j_k_direct to quadrature accuracy at a fraction of the cost;
// used by the window-moment suites where J_1 is needed at ~10^5 points.
// Source must cover [t_lo - G*trunc_mult, t_hi + G*trunc_mult].
SampledCurve j1_on_lattice(const SampledCurve& zsq, double t_lo, double t_hi,
                           double G, double trunc_mult,
                           unsigned threads = 1);

}  // namespace zetalab
