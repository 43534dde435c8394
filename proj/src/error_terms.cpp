#include "zetalab/error_terms.hpp"

#include <cmath>
#include <stdexcept>

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"
#include "zetalab/parallel.hpp"

#include "gl_nodes.inc"

namespace zetalab {

namespace {

constexpr double k_two_pi = 6.283185307179586;
constexpr double k_three_pi_over_4 = 2.356194490192345;

// Delta*(x) extended through x < 1 by the empty divisor sum; the grid
// starts at t = 0, so x = t/2pi sweeps through 0 where Delta* -> 0.
double delta_star_extended(const DivisorTable& table, double x) {
  if (x >= 1.0) return delta_star(table, x);
  if (x <= 0.0) return 0.0;
  auto n4 = (std::size_t)std::floor(4.0 * x);  // 0..3, always in-table
  long double s = 0.5L * (long double)table.alt_prefix[n4];
  return (double)(s - (long double)x * (std::log((long double)x) +
                                        k_two_gamma_m1));
}

struct PanelQuad {
  double value = 0.0;
  double err = 0.0;
};

// One panel [a, a+dt]: 8-node Gauss-Legendre, with the error estimated
// against two 4-node halves (one order lower, twice the resolution).
PanelQuad integrate_panel(double a, double dt, const EvalConfig& cfg) {
  double h = 0.5 * dt;
  double c = a + h;
  double v8 = 0.0;
  for (int j = 0; j < 8; ++j)
    v8 += k_gl8_w[j] * zeta_sq(c + h * k_gl8_x[j], cfg);
  v8 *= h;

  double v4 = 0.0;
  double hq = 0.25 * dt;
  for (int half = 0; half < 2; ++half) {
    double cc = a + hq + 2.0 * hq * half;
    double acc = 0.0;
    for (int j = 0; j < 4; ++j)
      acc += k_gl4_w[j] * zeta_sq(cc + hq * k_gl4_x[j], cfg);
    v4 += acc * hq;
  }
  return {v8, std::fabs(v8 - v4)};
}

}  // namespace

double second_moment_main_term(double T) {
  if (!(T >= 0.0))
    throw std::domain_error("second_moment_main_term: T must be >= 0");
  if (T == 0.0) return 0.0;
  long double x = T;
  return (double)(x * (std::log(x / (long double)k_two_pi) + k_two_gamma_m1));
}

// --- grid -------------------------------------------------------------

ErrorGrid ErrorGrid::build(double t_max, double dt, const EvalConfig& cfg,
                           unsigned threads) {
  cfg.validate();
  if (!(t_max >= 10.0))
    throw std::invalid_argument("ErrorGrid: t_max must be >= 10");
  if (!(dt > 0.0) || dt > 0.25)
    throw std::invalid_argument("ErrorGrid: dt must lie in (0, 0.25]");
  double gap = k_two_pi / std::log(t_max / k_two_pi);
  if (dt > gap)
    throw std::invalid_argument(
        "ErrorGrid: dt " + g17(dt) + " cannot resolve the mean zero gap " +
        g17(gap) + " near t_max");

  auto n_panels = (std::size_t)std::ceil(t_max / dt - 1e-9);
  std::size_t n_nodes = n_panels + 1;

  ErrorGrid g;
  g.eval = cfg;
  g.cumulative.curve = {0.0, dt, std::vector<double>(n_nodes), "cumulative"};
  g.cumulative.panel_error.assign(n_panels, 0.0);
  g.e = {0.0, dt, std::vector<double>(n_nodes), "E"};
  g.zsq = {0.0, dt, std::vector<double>(n_nodes), "zeta_sq"};

  std::vector<double> panel(n_panels);
  // each index writes its own slots only; result independent of the
  // thread count by construction
  parallel_for(n_panels, threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      PanelQuad q = integrate_panel(double(i) * dt, dt, cfg);
      panel[i] = q.value;
      g.cumulative.panel_error[i] = q.err;
      g.zsq.v[i] = zeta_sq(double(i) * dt, cfg);
    }
  });
  g.zsq.v[n_panels] = zeta_sq(double(n_panels) * dt, cfg);

  // sequential prefix: deterministic and O(n)
  long double run = 0.0L;
  g.cumulative.curve.v[0] = 0.0;
  for (std::size_t i = 0; i < n_panels; ++i) {
    run += panel[i];
    g.cumulative.curve.v[i + 1] = (double)run;
  }
  for (std::size_t k = 0; k < n_nodes; ++k)
    g.e.v[k] = g.cumulative.curve.v[k] - second_moment_main_term(double(k) * dt);

  g.rebuild_interpolant();
  return g;
}

void ErrorGrid::rebuild_interpolant() {
  interp_ = MonotoneCubic(cumulative.curve.t0, cumulative.curve.dt,
                          cumulative.curve.v);
}

double ErrorGrid::E(double t) const {
  return interp_(t) - second_moment_main_term(t);
}

// --- bundle -----------------------------------------------------------

ErrorTermBundle ErrorTermBundle::build(double t_max, double dt,
                                       const EvalConfig& cfg,
                                       const DivisorTable& table,
                                       unsigned threads) {
  double need = 4.0 * t_max / k_two_pi;
  if ((double)table.limit < need)
    throw coverage_error("ErrorTermBundle: divisor table covers " +
                         std::to_string(table.limit) + ", Delta* needs " +
                         g17(need));

  ErrorTermBundle b;
  b.grid = ErrorGrid::build(t_max, dt, cfg, threads);
  std::size_t n = b.grid.e.v.size();
  b.two_pi_delta_star = {0.0, dt, std::vector<double>(n), "2pi_delta_star"};
  b.estar = {0.0, dt, std::vector<double>(n), "Estar"};
  b.r = {0.0, dt, std::vector<double>(n), "R"};

  parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      double t = double(k) * dt;
      double ds = k_two_pi * delta_star_extended(table, t / k_two_pi);
      b.two_pi_delta_star.v[k] = ds;
      b.estar.v[k] = b.grid.e.v[k] - ds;
    }
  });

  long double run = 0.0L;
  b.r.v[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    run += 0.5L * (long double)(b.estar.v[k - 1] + b.estar.v[k]) * dt;
    b.r.v[k] = (double)(run - (long double)k_three_pi_over_4 * (double(k) * dt));
  }
  return b;
}

// --- persistence ------------------------------------------------------

void ErrorTermBundle::save(const std::string& path) const {
  const auto& cum = grid.cumulative.curve;
  ByteWriter w(path);
  w.magic("EGRD");
  w.u64(cum.v.size());
  w.f64(cum.t0);
  w.f64(cum.dt);
  w.f64_array(cum.v.data(), cum.v.size());
  w.f64_array(grid.e.v.data(), grid.e.v.size());
  w.f64_array(estar.v.data(), estar.v.size());
  w.f64_array(r.v.data(), r.v.size());
  w.close();
}

ErrorTermBundle ErrorTermBundle::load(const std::string& path) {
  ByteReader rd(path);
  rd.expect_magic("EGRD");
  std::uint64_t n = rd.u64();
  double t0 = rd.f64();
  double dt = rd.f64();
  if (n < 2 || !(dt > 0.0))
    throw format_error("grid cache " + path + ": implausible header");
  if (rd.remaining() != 4 * 8 * n)
    throw format_error("grid cache " + path + ": payload size mismatch");

  ErrorTermBundle b;
  auto fill = [&](SampledCurve& c, const char* label) {
    c = {t0, dt, std::vector<double>(n), label};
    rd.f64_array(c.v.data(), n);
  };
  fill(b.grid.cumulative.curve, "cumulative");
  fill(b.grid.e, "E");
  fill(b.estar, "Estar");
  fill(b.r, "R");
  for (double v : b.grid.cumulative.curve.v)
    if (!std::isfinite(v))
      throw format_error("grid cache " + path + ": non-finite cumulative");
  // two_pi_delta_star is recoverable as E - E*; restore it so the bundle
  // identity holds on loaded bundles too
  b.two_pi_delta_star = {t0, dt, std::vector<double>(n), "2pi_delta_star"};
  for (std::size_t k = 0; k < n; ++k)
    b.two_pi_delta_star.v[k] = b.grid.e.v[k] - b.estar.v[k];
  b.grid.rebuild_interpolant();
  return b;
}

void ErrorTermBundle::save_aux(const std::string& path) const {
  const auto& cum = grid.cumulative.curve;
  ByteWriter w(path);
  w.magic("ZSQG");
  w.u32(1);  // layout version
  w.u64(grid.eval.hash());
  w.u64(cum.v.size());
  w.f64(cum.t0);
  w.f64(cum.dt);
  w.f64_array(grid.zsq.v.data(), grid.zsq.v.size());
  w.f64_array(grid.cumulative.panel_error.data(),
              grid.cumulative.panel_error.size());
  w.close();
}

void ErrorTermBundle::load_aux(const std::string& path) {
  const auto& cum = grid.cumulative.curve;
  ByteReader rd(path);
  rd.expect_magic("ZSQG");
  if (rd.u32() != 1) throw format_error("aux cache " + path + ": version");
  std::uint64_t eval_hash = rd.u64();
  std::uint64_t n = rd.u64();
  double t0 = rd.f64();
  double dt = rd.f64();
  if (n != cum.v.size() || t0 != cum.t0 || dt != cum.dt)
    throw format_error("aux cache " + path + ": grid mismatch");
  if (eval_hash != grid.eval.hash())
    throw format_error("aux cache " + path + ": eval config mismatch");
  grid.zsq = {t0, dt, std::vector<double>(n), "zeta_sq"};
  rd.f64_array(grid.zsq.v.data(), n);
  grid.cumulative.panel_error.assign(n - 1, 0.0);
  rd.f64_array(grid.cumulative.panel_error.data(), n - 1);
}

}  // namespace zetalab
