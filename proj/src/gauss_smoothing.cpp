#include "zetalab/gauss_smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab {

namespace {
constexpr double k_sqrt_pi = 1.7724538509055160273;

// local slice of a curve as a monotone-cubic interpolant; E* is rough,
// but the wide Gaussian averages out node-level wiggle, so a
// shape-preserving local fit is all the lookup needs
MonotoneCubic slice_interpolant(const SampledCurve& c, double lo, double hi) {
  auto i0 = (std::size_t)std::max(0.0, std::floor((lo - c.t0) / c.dt) - 1.0);
  auto i1 = (std::size_t)std::min(double(c.v.size() - 1),
                                  std::ceil((hi - c.t0) / c.dt) + 1.0);
  return MonotoneCubic(c.t0 + double(i0) * c.dt, c.dt,
                       std::span<const double>(c.v.data() + i0, i1 - i0 + 1));
}
}  // namespace

SmoothingParams SmoothingParams::paper_mode(double T, int k, double G) {
  return {G, k, std::log(T), 64};
}

void SmoothingParams::validate() const {
  if (!(G > 0.0)) throw std::invalid_argument("SmoothingParams: G must be > 0");
  if (k < 1) throw std::invalid_argument("SmoothingParams: k must be >= 1");
  if (!(trunc_mult > 0.0))
    throw std::invalid_argument("SmoothingParams: trunc_mult must be > 0");
  if (nodes_per_G < 16)
    throw std::invalid_argument("SmoothingParams: nodes_per_G must be >= 16");
}

std::complex<double> gaussian_integral(std::complex<double> A,
                                       std::complex<double> B) {
  if (!(B.real() > 0.0))
    throw std::domain_error("gaussian_integral: Re B must be > 0");
  // principal sqrt is safe: Re B > 0 keeps pi/B off the branch cut
  return std::sqrt(std::complex<double>{3.141592653589793, 0.0} / B) *
         std::exp(A * A / (4.0 * B));
}

double gaussian_integral(double A, double B) {
  if (!(B > 0.0))
    throw std::domain_error("gaussian_integral: B must be > 0");
  return std::sqrt(3.141592653589793 / B) * std::exp(A * A / (4.0 * B));
}

ZetaSqSource eval_source(const EvalConfig& cfg) {
  return [cfg](double t) { return zeta_sq(t, cfg); };
}

ZetaSqSource curve_source(const SampledCurve& zsq) {
  // caller keeps the curve alive; sources are transient adapters
  const SampledCurve* c = &zsq;
  return [c](double t) {
    if (!c->covers(t, t))
      throw coverage_error("zeta_sq source: t = " + g17(t) + " off grid [" +
                           g17(c->t0) + ", " + g17(c->t_max()) + "]");
    double x = (t - c->t0) / c->dt;
    double fi = std::floor(x);
    auto i = (std::size_t)std::clamp(fi, 0.0, double(c->v.size() - 2));
    double frac = x - double(i);
    return c->v[i] + frac * (c->v[i + 1] - c->v[i]);
  };
}

double j_k_direct(double t, const SmoothingParams& p,
                  const ZetaSqSource& zeta_sq_source) {
  p.validate();
  double W = p.G * p.trunc_mult;
  if (t - W < 0.0)
    throw std::invalid_argument("j_k_direct: window [t-GM, t+GM] dips below 0");
  double h = p.G / double(p.nodes_per_G);
  auto n = (long)std::llround(std::ceil(W / h - 1e-9));
  double s = 0.0;
  for (long j = -n; j <= n; ++j) {
    double x = double(j) * h;
    double u = x / p.G;
    double f = zeta_sq_source(t + x);
    double fk = f;
    for (int q = 1; q < p.k; ++q) fk *= f;
    double w = (j == -n || j == n) ? 0.5 : 1.0;  // trapezoid ends
    s += w * fk * std::exp(-u * u);
  }
  return s * h / (k_sqrt_pi * p.G);
}

J1EstarResult j1_via_estar(double t, const SmoothingParams& p,
                           const ErrorTermBundle& bundle) {
  p.validate();
  if (p.k != 1)
    throw std::invalid_argument("j1_via_estar: representation exists for k=1");
  double g_lo = std::pow(t, 0.01), g_hi = std::cbrt(t);
  if (!(p.G >= g_lo && p.G <= g_hi))
    throw std::range_error("j1_via_estar: G = " + g17(p.G) +
                           " outside the validity range [t^0.01, t^(1/3)] = [" +
                           g17(g_lo) + ", " + g17(g_hi) + "]");
  double W = p.G * p.trunc_mult;
  const SampledCurve& es = bundle.estar;
  if (!es.covers(t - W, t + W))
    throw coverage_error("j1_via_estar: window [" + g17(t - W) + ", " +
                         g17(t + W) + "] off the bundle grid");

  bool nearest = es.dt <= p.G / 256.0;
  MonotoneCubic local;
  if (!nearest) local = slice_interpolant(es, t - W, t + W);
  auto estar_at = [&](double u) {
    if (nearest) {
      long i = std::llround((u - es.t0) / es.dt);
      i = std::clamp(i, 0l, (long)es.v.size() - 1);
      return es.v[(std::size_t)i];
    }
    return local(u);
  };

  double h = p.G / double(p.nodes_per_G);
  auto n = (long)std::llround(std::ceil(W / h - 1e-9));
  double s = 0.0;
  for (long j = -n; j <= n; ++j) {
    double x = double(j) * h;
    double u = x / p.G;
    double w = (j == -n || j == n) ? 0.5 : 1.0;
    s += w * x * estar_at(t + x) * std::exp(-u * u);
  }
  double lt = std::log(std::max(t, 2.718281828459045));
  return {2.0 * s * h / (k_sqrt_pi * p.G * p.G * p.G), lt * lt};
}

SampledCurve j1_on_lattice(const SampledCurve& zsq, double t_lo, double t_hi,
                           double G, double trunc_mult, unsigned threads) {
  if (!(G > 0.0) || !(trunc_mult > 0.0))
    throw std::invalid_argument("j1_on_lattice: G and trunc_mult must be > 0");
  if (zsq.v.size() < 2 || !(zsq.dt > 0.0))
    throw coverage_error("j1_on_lattice: empty source");
  double dt = zsq.dt;
  auto half = (long)std::ceil(G * trunc_mult / dt - 1e-9);
  auto i_lo = (long)std::ceil((t_lo - zsq.t0) / dt - 1e-9);
  auto i_hi = (long)std::floor((t_hi - zsq.t0) / dt + 1e-9);
  if (i_hi < i_lo)
    throw std::invalid_argument("j1_on_lattice: empty output range");
  if (i_lo - half < 0 || i_hi + half > (long)zsq.v.size() - 1)
    throw coverage_error(
        "j1_on_lattice: source must cover [" + g17(t_lo - G * trunc_mult) +
        ", " + g17(t_hi + G * trunc_mult) + "], has [" + g17(zsq.t0) + ", " +
        g17(zsq.t_max()) + "]");

  // shared kernel; the lattice spacing already resolves |zeta|^2, so the
  // trapezoid on source nodes is as accurate as the dedicated rule
  std::vector<double> kernel(2 * half + 1);
  for (long j = -half; j <= half; ++j) {
    double u = double(j) * dt / G;
    kernel[(std::size_t)(j + half)] = std::exp(-u * u);
  }
  kernel.front() *= 0.5;
  kernel.back() *= 0.5;

  SampledCurve out;
  out.t0 = zsq.t0 + double(i_lo) * dt;
  out.dt = dt;
  out.v.assign((std::size_t)(i_hi - i_lo + 1), 0.0);
  out.label = "J1";
  double scale = dt / (k_sqrt_pi * G);
  parallel_for(out.v.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double* src = zsq.v.data() + (std::size_t)(i_lo - half) + i;
      double s = 0.0;
      for (std::size_t j = 0; j < kernel.size(); ++j) s += kernel[j] * src[j];
      out.v[i] = s * scale;
    }
  });
  return out;
}

}  // namespace zetalab
