#include "longrun/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "longrun/errors.hpp"

namespace longrun::numeric {

double log_diff_exp(double a, double b) {
  if (b == neg_inf) return a;
  if (b >= a) return neg_inf;
  return a + log1m_exp(b - a);
}

double log1m_exp(double x) {
  if (x >= 0.0) return neg_inf;
  // Maechler's switch point: log(-expm1(x)) near 0, log1p(-exp(x)) below.
  return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

double log_sum_exp(std::span<const double> xs) {
  double hi = neg_inf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == neg_inf) return neg_inf;
  if (hi == INFINITY) return INFINITY;
  KahanSum acc;
  for (double x : xs) {
    if (x != neg_inf) acc += std::exp(x - hi);
  }
  return hi + std::log(acc.value());
}

MaximizeResult maximize_on_interval(const std::function<double(double)>& f, double lo,
                                    double hi, const MaximizeOptions& opts) {
  if (!(lo <= hi)) throw InvalidArgument("maximize_on_interval: lo > hi");
  if (lo == hi) return {lo, f(lo)};

  const int points = std::max(opts.grid_points, 3);
  const double step = (hi - lo) / (points - 1);
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = i == points - 1 ? hi : lo + step * i;
    const double v = f(x);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  double a = best == 0 ? lo : lo + step * (best - 1);
  double b = best == points - 1 ? hi : lo + step * (best + 1);
  MaximizeResult result{best == points - 1 ? hi : lo + step * best, best_value};

  constexpr double inv_phi = 0.6180339887498948482;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= opts.x_tolerance * scale) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  for (double x : {a, b, c, d}) {
    const double v = f(x);
    if (v > result.value) result = {x, v};
  }
  return result;
}

}  // namespace longrun::numeric
