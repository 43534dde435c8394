#include "zetalab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"

namespace zetalab {

namespace {

constexpr double k_e2_constant = 10.30471743950013871;  // lim T^{-3/2} int E^2
constexpr double k_r_exponent = 593.0 / 912.0;

// |v|^m with a multiply chain for small integer m; pow() costs ~20x
double abs_pow(double v, double m) {
  double a = std::fabs(v);
  double mi = std::floor(m);
  if (m == mi && m >= 1.0 && m <= 8.0) {
    double r = a;
    for (int i = 1; i < (int)mi; ++i) r *= a;
    return r;
  }
  return std::pow(a, m);
}

// trapezoid of |f|^m over [a,b] with linearly interpolated partial end
// panels; interior sum is pairwise for thread-count-independent totals
double integrate_abs_pow(const SampledCurve& c, double m, double a, double b) {
  if (c.v.size() < 2 || !(c.dt > 0.0)) throw coverage_error("empty curve");
  if (!c.covers(a, b))
    throw coverage_error("window [" + g17(a) + ", " + g17(b) +
                         "] off grid [" + g17(c.t0) + ", " + g17(c.t_max()) +
                         "]");
  auto g = [&](double v) { return abs_pow(v, m); };
  auto interp = [&](double t) {
    double x = (t - c.t0) / c.dt;
    auto i = (std::size_t)std::clamp(std::floor(x), 0.0, double(c.v.size() - 2));
    double frac = x - double(i);
    return c.v[i] + frac * (c.v[i + 1] - c.v[i]);
  };
  double xa = (a - c.t0) / c.dt, xb = (b - c.t0) / c.dt;
  auto ia = (std::size_t)std::clamp(std::ceil(xa - 1e-9), 0.0,
                                    double(c.v.size() - 1));
  auto ib = (std::size_t)std::clamp(std::floor(xb + 1e-9), 0.0,
                                    double(c.v.size() - 1));
  if (ia > ib) return 0.5 * (g(interp(a)) + g(interp(b))) * (b - a);

  double ta = c.t0 + double(ia) * c.dt, tb = c.t0 + double(ib) * c.dt;
  double total = 0.0;
  if (a < ta) total += 0.5 * (g(interp(a)) + g(c.v[ia])) * (ta - a);
  if (b > tb) total += 0.5 * (g(c.v[ib]) + g(interp(b))) * (b - tb);
  if (ib > ia) {
    std::vector<double> tv(ib - ia + 1);
    for (std::size_t k = 0; k < tv.size(); ++k) tv[k] = g(c.v[ia + k]);
    double s = pairwise_sum(std::span<const double>(tv).subspan(1, tv.size() - 2));
    s += 0.5 * (tv.front() + tv.back());
    total += s * c.dt;
  }
  return total;
}

VerificationReport make_report(std::string name, double lhs, double rhs,
                               double constant_used, std::string notes) {
  VerificationReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant_used = constant_used;
  r.passed = lhs <= rhs;
  r.notes = std::move(notes);
  return r;
}

std::string fit_note(const FitResult& f) {
  return "intercept=" + g17(f.intercept) + " max_residual=" +
         g17(f.max_residual) + " T=[" + g17(f.t_lo) + "," + g17(f.t_hi) + "]";
}

MomentCurve moment_ladder(const SampledCurve& f, double m,
                          const std::vector<double>& T_list, WindowKind kind) {
  MomentCurve c;
  c.m = m;
  c.window_kind = kind;
  for (double T : T_list)
    c.points.emplace_back(T, window_moment(f, m, T, kind));
  return c;
}

}  // namespace

TheoremEFParams TheoremEFParams::paper_values() {
  TheoremEFParams p;
  p.alpha_km[{1, 4}] = 7.0 / 36.0;
  p.alpha_km[{1, 5}] = 1.0 / 5.0;
  p.alpha_km[{1, 6}] = 2.0 / 9.0;
  p.c_k[5] = 2.0;
  p.c_k[6] = 7.0 / 3.0;
  return p;
}

double window_moment(const SampledCurve& f, double m, double T,
                     WindowKind window_kind) {
  if (!(m >= 1.0)) throw std::invalid_argument("window_moment: m must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("window_moment: T must be > 0");
  double a = window_kind == WindowKind::zero_to_T ? 0.0 : T;
  double b = window_kind == WindowKind::zero_to_T ? T : 2.0 * T;
  return integrate_abs_pow(f, m, a, b);
}

FitResult fit_exponent(const MomentCurve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 5)
    throw std::invalid_argument("fit_exponent: need at least 5 points");
  if (!(pts.back().first >= 10.0 * pts.front().first))
    throw std::invalid_argument("fit_exponent: need at least one decade in T");
  std::vector<double> xs, ys;
  for (const auto& [T, v] : pts) {
    if (!(v > 0.0))
      throw std::domain_error("fit_exponent: nonpositive moment value at T=" +
                              g17(T));
    xs.push_back(std::log(T));
    ys.push_back(std::log(v));
  }
  double n = double(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.t_lo = pts.front().first;
  f.t_hi = pts.back().first;
  for (std::size_t i = 0; i < xs.size(); ++i)
    f.max_residual = std::max(f.max_residual,
                              std::fabs(ys[i] - (f.intercept + f.slope * xs[i])));
  return f;
}

std::vector<VerificationReport> verify_estar_moments(
    const ErrorTermBundle& bundle, const std::vector<double>& T_list) {
  struct Row {
    int m;
    double bound;
  };
  static const Row rows[] = {{2, 4.0 / 3.0}, {4, 16.0 / 9.0}, {5, 2.0},
                             {6, 7.0 / 3.0}};
  std::vector<VerificationReport> out;
  for (const Row& row : rows) {
    MomentCurve c = moment_ladder(bundle.estar, row.m, T_list,
                                  WindowKind::zero_to_T);
    FitResult f = fit_exponent(c);
    out.push_back(make_report(
        "estar_moment_slope_m" + std::to_string(row.m), f.slope,
        row.bound + 0.15, row.bound,
        "target exponent plus 0.15 log-drift allowance; " + fit_note(f)));
  }
  return out;
}

VerificationReport verify_E2_asymptotic(const ErrorGrid& grid,
                                        const std::vector<double>& T_list) {
  std::string trend = "ratio trend:";
  double ratio = 0.0;
  for (double T : T_list) {
    double v = window_moment(grid.e, 2.0, T, WindowKind::zero_to_T);
    ratio = v / std::pow(T, 1.5);
    trend += " " + g17(ratio);
  }
  return make_report("E2_over_T_3_2", std::fabs(ratio / k_e2_constant - 1.0),
                     0.25, k_e2_constant,
                     "relative offset of int_0^T E^2 / T^{3/2} from the mean "
                     "square constant at the largest T; " + trend);
}

std::vector<VerificationReport> verify_R_moments(
    const ErrorTermBundle& bundle, const std::vector<double>& T_list) {
  std::vector<VerificationReport> out;
  MomentCurve r2 = moment_ladder(bundle.r, 2.0, T_list, WindowKind::zero_to_T);
  FitResult f2 = fit_exponent(r2);
  out.push_back(make_report("R2_slope_upper", f2.slope, 2.2, 2.0,
                            "int_0^T R^2 grows like T^2 times a cubic log; " +
                                fit_note(f2)));
  out.push_back(make_report("R2_slope_lower", 1.8, f2.slope, 2.0,
                            "two-sided partner of R2_slope_upper"));

  MomentCurve r4 = moment_ladder(bundle.r, 4.0, T_list, WindowKind::zero_to_T);
  FitResult f4 = fit_exponent(r4);
  out.push_back(make_report("R4_slope", f4.slope, 3.15, 3.0, fit_note(f4)));

  // growth constant, recorded but never asserted (the bound is asymptotic)
  double worst = 0.0, worst_T = 0.0;
  for (double T : T_list) {
    // |R(T)| read from the node nearest T
    auto i = (std::size_t)std::llround((T - bundle.r.t0) / bundle.r.dt);
    i = std::min(i, bundle.r.v.size() - 1);
    double q = std::fabs(bundle.r.v[i]) / std::pow(T, k_r_exponent);
    if (q > worst) {
      worst = q;
      worst_T = T;
    }
  }
  out.push_back(make_report(
      "R_growth_recorded", worst, worst, k_r_exponent,
      "max |R(T)| / T^{593/912} over the ladder, attained at T=" +
          g17(worst_T) + "; recorded only, no assertion"));
  return out;
}

VerificationReport verify_theorem2(const ErrorTermBundle& bundle, int m,
                                   double G, double T, unsigned threads) {
  if (m < 1) throw std::invalid_argument("verify_theorem2: m must be >= 1");
  if (!(G > 0.0) || G > T)
    throw std::invalid_argument("verify_theorem2: need 0 < G <= T");
  const SampledCurve& zsq = bundle.grid.zsq;
  if (zsq.v.empty())
    throw coverage_error("verify_theorem2: bundle lacks integrand samples");

  double L = std::log(T);
  SampledCurve j1 = j1_on_lattice(zsq, T, 2.0 * T, G, L, threads);
  double lhs = window_moment(j1, double(m), T, WindowKind::T_to_2T);

  // inner windows int_T^{2T} |E*(t+x)|^m dt for lattice-aligned x, via one
  // cumulative prefix of |E*|^m
  const SampledCurve& es = bundle.estar;
  double dt = es.dt;
  auto iT = (long)std::llround((T - es.t0) / dt);
  auto i2T = (long)std::llround((2.0 * T - es.t0) / dt);
  auto nGL = (long)std::ceil(G * L / dt - 1e-9);
  if (iT - nGL < 0 || i2T + nGL > (long)es.v.size() - 1)
    throw coverage_error("verify_theorem2: E* grid too short for the x-window");
  std::vector<long double> cum(es.v.size(), 0.0L);
  for (std::size_t k = 1; k < es.v.size(); ++k)
    cum[k] = cum[k - 1] +
             0.5L * (abs_pow(es.v[k - 1], m) + abs_pow(es.v[k], m)) * dt;
  double ix = 0.0;
  for (long j = -nGL; j <= nGL; ++j) {
    double g = (double)(cum[(std::size_t)(i2T + j)] - cum[(std::size_t)(iT + j)]);
    ix += (j == -nGL || j == nGL) ? 0.5 * g : g;
  }
  ix *= dt;
  double base = std::pow(G, -1.0 - double(m)) * ix;
  double slack = T * std::pow(L, 2.0 * m);

  // smallest C >= 1 closing the inequality; bisection to 1% per protocol
  double c_found;
  if (lhs <= base + 1.0 * slack) {
    c_found = 1.0;
  } else {
    double hi = 2.0;
    while (lhs > base + hi * slack && hi < 1e9) hi *= 2.0;
    double lo = hi * 0.5;
    while (hi - lo > 0.01 * lo) {
      double mid = 0.5 * (lo + hi);
      (lhs <= base + mid * slack ? hi : lo) = mid;
    }
    c_found = hi;
  }
  double c_used = std::min(c_found, 100.0);
  return make_report(
      "thm2_local_moment_m" + std::to_string(m), lhs, base + c_used * slack,
      c_used,
      "smallest closing C=" + g17(c_found) + " base=" + g17(base) +
          " slack_unit=" + g17(slack) + " G=" + g17(G) + " T=" + g17(T));
}

std::vector<VerificationReport> verify_theorem1_and_A(
    const ErrorGrid& grid, const std::vector<int>& m_list,
    const std::vector<double>& T_list, unsigned threads) {
  // paper thresholds, eps realized as +0.01
  auto alpha_of = [](int m) {
    switch (m) {
      case 1:
      case 2:
        return 0.0;
      case 3:
        return 1.0 / 7.0;
      case 4:
        return 7.0 / 36.0;
      case 5:
        return 1.0 / 5.0;
      case 6:
        return 2.0 / 9.0;
      default:
        throw std::invalid_argument("verify_theorem1_and_A: m must be 1..6");
    }
  };
  std::vector<VerificationReport> out;
  for (int m : m_list) {
    double alpha = alpha_of(m);
    MomentCurve c;
    c.m = m;
    c.window_kind = WindowKind::T_to_2T;
    for (double T : T_list) {
      double G = std::pow(T, alpha + 0.01);
      SampledCurve j1 =
          j1_on_lattice(grid.zsq, T, 2.0 * T, G, std::log(T), threads);
      c.points.emplace_back(T, window_moment(j1, double(m), T,
                                             WindowKind::T_to_2T));
    }
    FitResult f = fit_exponent(c);
    out.push_back(make_report(
        "thm1_J1_slope_m" + std::to_string(m), f.slope, 1.2, alpha,
        "G = T^(alpha+0.01) at the paper threshold; " + fit_note(f)));
  }
  return out;
}

std::vector<VerificationReport> zeta_moment_report(
    const ErrorGrid& grid, const TheoremEFParams& params,
    const std::vector<double>& T_list) {
  std::vector<VerificationReport> out;
  struct Row {
    int m;
    double num, den;  // implied exponent as a fraction
  };
  static const Row rows[] = {{4, 19.0, 12.0}, {5, 9.0, 5.0}, {6, 19.0, 9.0}};
  for (const Row& row : rows) {
    // arithmetic reduction 1 + (m-1) alpha first
    double alpha = params.alpha_km.at({1, row.m});
    double implied = 1.0 + double(row.m - 1) * alpha;
    double target = row.num / row.den;
    out.push_back(make_report(
        "reduction_exponent_m" + std::to_string(row.m), implied,
        target + 1e-12, alpha,
        "1+(m-1)alpha against the stated " + g17(row.num) + "/" +
            g17(row.den)));

    MomentCurve c = moment_ladder(grid.zsq, row.m, T_list,
                                  WindowKind::zero_to_T);
    FitResult f = fit_exponent(c);
    out.push_back(make_report(
        "zeta_moment_slope_2k" + std::to_string(2 * row.m), f.slope, target,
        alpha, "measured growth of the " + std::to_string(2 * row.m) +
                   "th moment, desk scale; " + fit_note(f)));
  }
  // twelfth moment against the classical exponent 2 through c(5)
  MomentCurve c6 = moment_ladder(grid.zsq, 6.0, T_list, WindowKind::zero_to_T);
  FitResult f6 = fit_exponent(c6);
  out.push_back(make_report(
      "twelfth_moment_slope", f6.slope, 2.0, params.c_k.at(5),
      "twelfth-moment exponent bound implied by c(5)=2; c(6)=" +
          g17(params.c_k.at(6)) + " recorded; " + fit_note(f6)));
  return out;
}

double soundararajan_L(double y) {
  constexpr double k_e_to_e = 15.154262241479262;
  if (!(y > k_e_to_e))
    throw std::domain_error("soundararajan_L: y must exceed e^e");
  double l1 = std::log(y);
  double l2 = std::log(l1);
  double l3 = std::log(l2);
  double p2 = 0.75 * (2.0 * std::cbrt(2.0) - 1.0);  // (3/4)(2^{4/3}-1)
  return std::pow(l1, 0.25) * std::pow(l2, p2) * std::pow(l3, -0.625);
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"constant_used", r.constant_used},
                   {"passed", r.passed},
                   {"notes", r.notes}});
  }
  return arr.dump(2) + "\n";
}

std::vector<VerificationReport> reports_from_json(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<VerificationReport> out;
  for (const auto& j : arr) {
    VerificationReport r;
    r.name = j.at("name").get<std::string>();
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.constant_used = j.at("constant_used").get<double>();
    r.passed = j.at("passed").get<bool>();
    r.notes = j.at("notes").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace zetalab
