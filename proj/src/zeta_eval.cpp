#include "zetalab/zeta_eval.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "zetalab/dd.hpp"
#include "zetalab/errors.hpp"

// Frozen numeric tables; generated and cross-validated offline by
// scripts/gen_tables.py, checked in so builds never depend on Python.
#include "ln_dd.inc"
#include "rs_cheb.inc"

namespace zetalab {

namespace {

constexpr double k_two_pi = 6.283185307179586;
constexpr double k_two_pi_lo = 2.4492935982947064e-16;  // fl(2pi) residual
constexpr double k_pi = 3.141592653589793;
constexpr double k_ln_pi = 1.1447298858494002;
constexpr double k_half_ln_two_pi = 0.9189385332046728;

// n = floor(sqrt(t/2pi)) stays within the frozen log table up to here.
constexpr double k_t_ceiling = 6.5e6;

// x mod 2pi for x already rounded to double. Two fused multiply-adds
// remove k*(2pi) exactly; the surviving error is the rounding of x
// itself, which the caller budgets.
inline double reduce_two_pi(double x) {
  double k = std::nearbyint(x * (1.0 / k_two_pi));
  double r = std::fma(-k, k_two_pi, x);
  return std::fma(-k, k_two_pi_lo, r);
}

inline double clenshaw(const double* c, int n, double u) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = n - 1; k >= 1; --k) {
    double b0 = 2.0 * u * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

// 1/sqrt(n) for the main sum, filled on first use.
struct RsqrtTable {
  double v[k_ln_dd_max + 1];
  RsqrtTable() {
    v[0] = 0.0;
    for (int n = 1; n <= k_ln_dd_max; ++n) v[n] = 1.0 / std::sqrt(double(n));
  }
};
const RsqrtTable k_rsqrt;

// ln n as a plain double (hi limb of the dd split).
inline double ln_hi(int n) { return n < 2 ? 0.0 : k_ln_dd[n - 2][0]; }

// --- theta ------------------------------------------------------------

// Stirling with argument shift; principal branch throughout (every
// shifted argument stays in the right half-plane, so no Im wrap).
std::complex<double> log_gamma(std::complex<double> z) {
  std::complex<double> shift = 0.0;
  while (z.real() < 9.0) {
    shift += std::log(z);
    z += 1.0;
  }
  std::complex<double> inv = 1.0 / z;
  std::complex<double> inv2 = inv * inv;
  // B_{2n} / (2n(2n-1)) z^{1-2n}, n = 1..7
  std::complex<double> series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 +
                                     inv2 * (1.0 / 1188.0 +
                                             inv2 * (-691.0 / 360360.0 +
                                                     inv2 * (7.0 / 1092.0)))))));
  std::complex<double> st =
      (z - 0.5) * std::log(z) - z + k_half_ln_two_pi + series;
  return st - shift;
}

double theta_asymptotic(double t) {
  double inv = 1.0 / t;
  double inv2 = inv * inv;
  double tail = inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0)));
  return 0.5 * t * (std::log(t / k_two_pi) - 1.0) - k_pi / 8.0 + tail;
}

// --- Riemann-Siegel ---------------------------------------------------

double rs_z(double t, const EvalConfig& cfg) {
  double tau2 = t / k_two_pi;           // (t/2pi)
  double sq = std::sqrt(tau2);
  int n_main = (int)std::floor(sq);
  double p = sq - double(n_main);

  double thr = reduce_two_pi(theta(t));
  bool dd_phase = t > 1.0e5;

  double s = n_main >= 1 ? std::cos(thr) : 0.0;  // n = 1 term
  for (int n = 2; n <= n_main; ++n) {
    double xr;
    if (dd_phase) {
      const double(&ln)[2] = k_ln_dd[n - 2];
      xr = dd_mod_two_pi(dd_mul(t, dd{ln[0], ln[1]}));
    } else {
      xr = reduce_two_pi(t * ln_hi(n));
    }
    s += std::cos(thr - xr) * k_rsqrt.v[n];
  }
  double z = 2.0 * s;

  double sgn = (n_main - 1) % 2 == 0 ? 1.0 : -1.0;
  double corr = clenshaw(k_rs_c0, (int)(sizeof k_rs_c0 / sizeof *k_rs_c0),
                         2.0 * p - 1.0);
  if (cfg.rs_correction_order >= 1)
    corr += clenshaw(k_rs_c1, (int)(sizeof k_rs_c1 / sizeof *k_rs_c1),
                     2.0 * p - 1.0) / sq;
  if (cfg.rs_correction_order >= 2)
    corr += clenshaw(k_rs_c2, (int)(sizeof k_rs_c2 / sizeof *k_rs_c2),
                     2.0 * p - 1.0) / tau2;
  return z + sgn * std::pow(tau2, -0.25) * corr;
}

}  // namespace

// --- public surface ---------------------------------------------------

void EvalConfig::validate() const {
  if (rs_correction_order < 0 || rs_correction_order > 2)
    throw std::invalid_argument("rs_correction_order must be 0, 1 or 2");
  if (oracle_terms < 10)
    throw std::invalid_argument("oracle_terms must be >= 10");
  if (!(crossover_t >= 0.0) || crossover_t > 1.0e4)
    throw std::invalid_argument("crossover_t must lie in [0, 1e4]");
}

std::uint64_t EvalConfig::hash() const {
  // FNV-1a over the field bytes plus a layout version salt
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
    return h;
  };
  std::uint64_t h = 14695981039346656037ull;
  h = mix(h, 1);  // version
  h = mix(h, (std::uint64_t)rs_correction_order);
  h = mix(h, (std::uint64_t)oracle_terms);
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof crossover_t);
  std::memcpy(&bits, &crossover_t, 8);
  h = mix(h, bits);
  return h;
}

double theta(double t) {
  if (!std::isfinite(t)) throw std::domain_error("theta: non-finite t");
  if (t < 0.0) return -theta(-t);
  if (t >= 10.0) return theta_asymptotic(t);
  std::complex<double> lg = log_gamma({0.25, 0.5 * t});
  return lg.imag() - 0.5 * t * k_ln_pi;
}

std::complex<double> euler_maclaurin_zeta_half(double t, int terms) {
  if (!std::isfinite(t))
    throw std::domain_error("euler_maclaurin_zeta_half: non-finite t");
  if (terms < 10)
    throw accuracy_error("euler_maclaurin_zeta_half: terms must be >= 10");
  if (std::fabs(t) > 1.0e4)
    throw accuracy_error(
        "euler_maclaurin_zeta_half: |t| > 1e4 needs the fast path, "
        "truncation here is O(terms + t)");

  std::complex<double> s{0.5, t};
  int m = terms + (int)std::ceil(std::fabs(t));
  if (m < 2) m = 2;

  std::complex<double> acc = 0.0;
  for (int n = 1; n < m; ++n) {
    // n^{-s} = e^{-i t ln n} / sqrt(n)
    double x = t * std::log(double(n));
    acc += std::complex<double>{std::cos(x), -std::sin(x)} /
           std::sqrt(double(n));
  }
  double lm = std::log(double(m));
  double xm = t * lm;
  std::complex<double> m_pow_ms =  // m^{-s}
      std::complex<double>{std::cos(xm), -std::sin(xm)} / std::sqrt(double(m));
  acc += double(m) * m_pow_ms / (s - 1.0);  // m^{1-s}/(s-1)
  acc += 0.5 * m_pow_ms;

  static const double bern[12] = {
      1.0 / 6,       -1.0 / 30,      1.0 / 42,       -1.0 / 30,
      5.0 / 66,      -691.0 / 2730,  7.0 / 6,        -3617.0 / 510,
      43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};
  std::complex<double> rising = s;  // s(s+1)...(s+2k-2)
  std::complex<double> mpow = m_pow_ms / double(m);
  double inv_m2 = 1.0 / (double(m) * double(m));
  double fact = 1.0;
  std::complex<double> corr = 0.0;
  for (int k = 1; k <= 12; ++k) {
    fact *= double((2 * k - 1) * (2 * k));
    corr += bern[k - 1] / fact * rising * mpow;
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    mpow *= inv_m2;
  }
  return acc + corr;
}

double z_function(double t, const EvalConfig& cfg) {
  if (!std::isfinite(t)) throw std::domain_error("z_function: non-finite t");
  if (t < 0.0) throw std::domain_error("z_function: t must be >= 0");
  cfg.validate();
  if (t < cfg.crossover_t) {
    std::complex<double> zeta = euler_maclaurin_zeta_half(t, cfg.oracle_terms);
    double thr = reduce_two_pi(theta(t));
    // Z = e^{i theta} zeta is real; Re() discards rounding dust only
    return (std::complex<double>{std::cos(thr), std::sin(thr)} * zeta).real();
  }
  if (t > k_t_ceiling)
    throw accuracy_error("z_function: t beyond the frozen log-table range");
  return rs_z(t, cfg);
}

double zeta_sq(double t, const EvalConfig& cfg) {
  double z = z_function(t, cfg);
  return z * z;
}

CriticalLinePoint eval_point(double t, const EvalConfig& cfg) {
  double z = z_function(t, cfg);
  return {t, z, z * z};
}

}  // namespace zetalab
