#include "zetalab/divisor.hpp"

#include <cmath>
#include <stdexcept>

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"

namespace zetalab {

namespace {

long double main_term_l(long double x) {
  return x * (std::log(x) + k_two_gamma_m1);
}

// floor(x) as int64 with the convention that an exact integer boundary
// belongs to the sum.
std::int64_t floor_i(double x) { return (std::int64_t)std::floor(x); }

std::int64_t isqrt_i(std::int64_t n) {
  auto k = (std::int64_t)std::sqrt((double)n);
  while ((k + 1) * (k + 1) <= n) ++k;
  while (k * k > n) --k;
  return k;
}

void check_x(double x, const char* who) {
  if (!(x >= 1.0))
    throw std::domain_error(std::string(who) + ": x must be >= 1");
}

// Exact D via table prefix when covered; long-double smooth part happens
// in the callers.
std::int64_t table_D(const DivisorTable& t, std::int64_t n) {
  return n <= 0 ? 0 : t.prefix[(std::size_t)n];
}

}  // namespace

DivisorTable DivisorTable::build(std::uint64_t limit) {
  if (limit < 1 || limit > 1000000000ull)
    throw std::length_error("divisor table limit must be in [1, 1e9]");
  DivisorTable t;
  t.limit = limit;
  t.d.assign(limit + 1, 0);
  // divisor-marking sieve: ~N log N increments, the log factor is the
  // harmonic series of strides
  for (std::uint64_t i = 1; i <= limit; ++i)
    for (std::uint64_t j = i; j <= limit; j += i) t.d[j]++;
  t.prefix.assign(limit + 1, 0);
  t.alt_prefix.assign(limit + 1, 0);
  std::int64_t run = 0, alt = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    run += t.d[n];
    alt += (n & 1) ? -std::int64_t(t.d[n]) : std::int64_t(t.d[n]);
    t.prefix[n] = run;
    t.alt_prefix[n] = alt;
  }
  return t;
}

void DivisorTable::save(const std::string& path) const {
  ByteWriter w(path);
  w.magic("DIVT");
  w.u64(limit);
  w.u32_array(d.data() + 1, limit);
  w.close();
}

DivisorTable DivisorTable::load(const std::string& path) {
  ByteReader r(path);
  r.expect_magic("DIVT");
  DivisorTable t;
  t.limit = r.u64();
  if (t.limit < 1 || t.limit > 1000000000ull)
    throw format_error("divisor cache " + path + ": implausible limit");
  if (r.remaining() != 4 * t.limit)
    throw format_error("divisor cache " + path + ": payload size mismatch");
  t.d.assign(t.limit + 1, 0);
  r.u32_array(t.d.data() + 1, t.limit);
  t.prefix.assign(t.limit + 1, 0);
  t.alt_prefix.assign(t.limit + 1, 0);
  std::int64_t run = 0, alt = 0;
  for (std::uint64_t n = 1; n <= t.limit; ++n) {
    run += t.d[n];
    alt += (n & 1) ? -std::int64_t(t.d[n]) : std::int64_t(t.d[n]);
    t.prefix[n] = run;
    t.alt_prefix[n] = alt;
  }
  return t;
}

std::int64_t divisor_sum_hyperbola(double x) {
  check_x(x, "divisor_sum_hyperbola");
  // floor(x/n) = floor(floor(x)/n) for integer n, so all arithmetic is
  // exact in int64
  std::int64_t X = floor_i(x);
  std::int64_t K = isqrt_i(X);
  std::int64_t s = 0;
  for (std::int64_t n = 1; n <= K; ++n) s += X / n;
  return 2 * s - K * K;
}

std::int64_t big_D(const DivisorTable& table, double x) {
  check_x(x, "big_D");
  std::int64_t X = floor_i(x);
  if ((std::uint64_t)X <= table.limit) return table_D(table, X);
  return divisor_sum_hyperbola(x);
}

double delta(const DivisorTable& table, double x) {
  check_x(x, "delta");
  return (double)((long double)big_D(table, x) - main_term_l(x));
}

double delta_star(const DivisorTable& table, double x) {
  check_x(x, "delta_star");
  double x4 = 4.0 * x;  // exact: scaling by a power of two
  std::int64_t n4 = floor_i(x4);
  if ((std::uint64_t)n4 <= table.limit) {
    long double s = 0.5L * (long double)table.alt_prefix[(std::size_t)n4];
    return (double)(s - main_term_l(x));
  }
  return delta_star_three_delta(table, x);
}

double delta_star_three_delta(const DivisorTable& table, double x) {
  check_x(x, "delta_star_three_delta");
  // combine in long double; rounding each Delta to double first would
  // eat the 1e-9 cross-route budget at x ~ 1e6
  long double d1 = (long double)big_D(table, x) - main_term_l(x);
  long double d2 = (long double)big_D(table, 2.0 * x) - main_term_l(2.0L * x);
  long double d4 = (long double)big_D(table, 4.0 * x) - main_term_l(4.0L * x);
  return (double)(-d1 + 2.0L * d2 - 0.5L * d4);
}

std::int64_t shiu_window_sum(const DivisorTable& table, double t, double G,
                             double L) {
  double center = 2.0 * t / 3.141592653589793;
  double half = G * L;
  if (center - half < 1.0)
    throw std::invalid_argument("shiu_window_sum: window reaches below n = 1");
  std::int64_t lo = (std::int64_t)std::ceil(center - half);
  std::int64_t hi = floor_i(center + half);
  if (lo > hi) return 0;
  if ((std::uint64_t)hi > table.limit)
    throw coverage_error("shiu_window_sum: window ends at " +
                         std::to_string(hi) + ", table holds " +
                         std::to_string(table.limit));
  return table.prefix[(std::size_t)hi] - table.prefix[(std::size_t)(lo - 1)];
}

double integral_delta_star(const DivisorTable& table, double a, double b) {
  if (!(a >= 1.0) || !(b >= a))
    throw std::domain_error("integral_delta_star: need 1 <= a <= b");
  std::int64_t hi4 = floor_i(4.0 * b);
  if ((std::uint64_t)hi4 > table.limit)
    throw coverage_error("integral_delta_star: needs alternating sums to " +
                         std::to_string(hi4) + ", table holds " +
                         std::to_string(table.limit));
  // antiderivative of u (log u + 2 gamma - 1)
  auto F = [](long double u) {
    return u * u * (0.5L * std::log(u) - 0.25L + 0.5L * k_two_gamma_m1);
  };
  // Delta* is a step minus smooth drift, with steps on the quarter grid;
  // integrate each constant piece exactly
  std::int64_t j0 = floor_i(4.0 * a);
  long double total = 0.0L;
  for (std::int64_t j = j0; j <= hi4; ++j) {
    long double lo = std::max((long double)a, 0.25L * (long double)j);
    long double hi = std::min((long double)b, 0.25L * (long double)(j + 1));
    if (hi <= lo) continue;
    long double step = 0.5L * (long double)table.alt_prefix[(std::size_t)j];
    total += step * (hi - lo) - (F(hi) - F(lo));
  }
  return (double)total;
}

}  // namespace zetalab
