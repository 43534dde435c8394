#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Divisor-sum machinery. The objects of interest:
//
//     D(x)      = sum_{n<=x} d(n)
//     Delta(x)  = D(x) - x(log x + 2 gamma - 1)
//     Delta*(x) = -Delta(x) + 2 Delta(2x) - Delta(4x)/2
//               = (1/2) sum_{n<=4x} (-1)^n d(n) - x(log x + 2 gamma - 1)
//
// The alternating form of Delta* is the production path (one table walk);
// the three-Delta combination is kept as an independent route and the two
// must agree to 1e-9 (see tests). Both subtractions lose ~x log x of
// headroom, so the smooth part is accumulated in long double before
// rounding to double.
//
// "n <= y" for real y always means n <= floor(y); an integer boundary is
// included with full weight.

namespace zetalab {

inline constexpr double k_euler_gamma = 0.57721566490153286061;

// 2 gamma - 1 at long double precision: the smooth main terms below
// reach ~x log x while the error terms are ~x^{1/4}, so subtractions
// happen in long double everywhere.
inline constexpr long double k_two_gamma_m1 = 0.15443132980306572126L;

// d(n) for n = 1..limit via divisor-marking sieve, plus prefix sums.
// Memory: ~20 bytes per n. Construction is the only mutating phase; all
// queries afterward are const and thread-safe.
struct DivisorTable {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> d;           // d[n], index 0 unused
  std::vector<std::int64_t> prefix;       // sum_{m<=n} d(m)
  std::vector<std::int64_t> alt_prefix;   // sum_{m<=n} (-1)^m d(m)

  static DivisorTable build(std::uint64_t limit);

  // Binary cache, magic "DIVT", u64 limit, u32 d[1..limit]. Loading
  // re-derives the prefix arrays.
  void save(const std::string& path) const;
  static DivisorTable load(const std::string& path);
};

// D(x): exact. Table lookup when floor(x) <= table.limit, otherwise the
// Dirichlet hyperbola identity 2 sum_{n<=K} floor(x/n) - K^2, K =
// floor(sqrt x), in O(sqrt x). x < 1 throws std::domain_error.
std::int64_t big_D(const DivisorTable& table, double x);

// Hyperbola route alone, table-free; exact in int64 far past any
// reachable x. Exposed for the cross-method equality tests.
std::int64_t divisor_sum_hyperbola(double x);

// Delta(x) for x >= 1 (std::domain_error below).
double delta(const DivisorTable& table, double x);

// Delta*(x) for x >= 1. Alternating-sum form when 4x is inside the
// table, three-Delta hyperbola form beyond it; both exact in the integer
// part, so the route switch moves the value by rounding only.
double delta_star(const DivisorTable& table, double x);

// Always the three-Delta combination; the cross-route oracle.
double delta_star_three_delta(const DivisorTable& table, double x);

// Exact sum of d(n) over the short interval 2t/pi - GL <= n <= 2t/pi + GL
// used by the smoothing analysis. Empty windows return 0; a window with
// left end below 1 throws std::invalid_argument, a right end past the
// table throws coverage_error.
std::int64_t shiu_window_sum(const DivisorTable& table, double t, double G,
                             double L);

// Integral of Delta*(u) du over [a, b], 1 <= a <= b, by quarter-integer
// splitting: between consecutive quarter-points the alternating sum is
// constant, so each piece is (const)*(length) minus the exact
// antiderivative of u(log u + 2 gamma - 1).
double integral_delta_star(const DivisorTable& table, double a, double b);

}  // namespace zetalab
