#include "longrun/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "longrun/errors.hpp"
#include "longrun/numeric.hpp"

namespace longrun::special {

namespace {

// Acklam's rational approximation, relative error about 1.2e-9.
double acklam(double q) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (q < low) {
    const double r = std::sqrt(-2.0 * std::log(q));
    return (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
           ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  if (q > 1.0 - low) {
    const double r = std::sqrt(-2.0 * std::log1p(-q));
    return -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
           ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  const double u = q - 0.5;
  const double r = u * u;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidArgument("std_normal_quantile: q must lie in (0, 1), got " + std::to_string(q));
  }
  // Work in the lower half so the tail probability is never formed as 1 - small.
  const bool upper = q > 0.5;
  const double tail = upper ? 1.0 - q : q;
  if (tail == 0.5) return 0.0;
  double x = acklam(tail);
  // Newton on Phi(x) - tail with Phi(x) = erfc(-x / sqrt 2) / 2.
  const double root2 = std::numbers::sqrt2;
  const double inv_root_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  for (int i = 0; i < 3; ++i) {
    const double err = 0.5 * std::erfc(-x / root2) - tail;
    const double dens = inv_root_2pi * std::exp(-0.5 * x * x);
    const double step = err / dens;
    // Halley correction; converges cubically from Acklam's start
    x -= step / (1.0 + 0.5 * x * step);
  }
  return upper ? -x : x;
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int max_iter = 10000;
  constexpr double eps = 1e-16;
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw ConvergenceError("regularized_incomplete_beta: continued fraction did not converge for a = " +
                         std::to_string(a) + ", b = " + std::to_string(b) +
                         ", x = " + std::to_string(x));
}

// lgamma(z) minus its Stirling approximation.
double stirling_remainder(double z) {
  if (z >= 10.0) {
    const double r = 1.0 / (z * z);
    return (1.0 / 12.0 -
            r * (1.0 / 360.0 -
                 r * (1.0 / 1260.0 - r * (1.0 / 1680.0 - r * (1.0 / 1188.0 - r * 691.0 / 360360.0))))) /
           z;
  }
  return std::lgamma(z) - ((z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi));
}

// ln of x^a (1-x)^b / (a B(a, b)). Written around the mode x = a/(a+b) so the
// large lgamma terms cancel analytically instead of in floating point.
double log_prefactor(double a, double b, double x) {
  const double s = a + b;
  const double d = std::fma(x, s, -a);  // x s - a = -((1-x) s - b)
  // near the mode log1p keeps the small deviation exact; far from it, forming
  // 1 + d/a would cancel, so use ln x + ln(s/a) directly
  const double ta = std::abs(d) < 0.5 * a ? a * std::log1p(d / a)
                                         : a * (std::log(x) + std::log1p(b / a));
  const double tb = std::abs(d) < 0.5 * b ? b * std::log1p(-d / b)
                                         : b * (std::log1p(-x) + std::log1p(a / b));
  return ta + tb + 0.5 * std::log(a * b / s) -
         0.5 * std::log(2.0 * std::numbers::pi) - stirling_remainder(a) - stirling_remainder(b) +
         stirling_remainder(s) - std::log(a);
}

// ln I_x(a, b) and ln(1 - I_x(a, b)) for 0 < x < 1, each accurate when small.
double log_lower_tail(double a, double b, double x) {
  if (x > (a + 1.0) / (a + b + 2.0)) {
    return numeric::log1m_exp(log_prefactor(b, a, 1.0 - x) +
                              std::log(beta_continued_fraction(b, a, 1.0 - x)));
  }
  return log_prefactor(a, b, x) + std::log(beta_continued_fraction(a, b, x));
}

double log_upper_tail(double a, double b, double x) { return log_lower_tail(b, a, 1.0 - x); }

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete beta: a and b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0)) {
    return 1.0 - std::exp(log_prefactor(b, a, 1.0 - x)) * beta_continued_fraction(b, a, 1.0 - x);
  }
  return std::exp(log_prefactor(a, b, x)) * beta_continued_fraction(a, b, x);
}

double beta_quantile(double a, double b, double q) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("beta_quantile: a and b must be > 0");
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("beta_quantile: q must lie in (0, 1)");
  // Solve on the log scale of the smaller tail so deep-tail targets keep
  // their relative precision and Newton steps stay meaningful.
  const bool lower_side = q <= 0.5;
  const double target = lower_side ? std::log(q) : std::log1p(-q);
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  double lo = 0.0;
  double hi = 1.0;
  double x = a / (a + b);
  for (int i = 0; i < 2000; ++i) {
    const double tail = lower_side ? log_lower_tail(a, b, x) : log_upper_tail(a, b, x);
    const double g = tail - target;
    if (g == 0.0) return x;
    // the lower tail increases in x, the upper tail decreases
    if ((g < 0.0) == lower_side) lo = x; else hi = x;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
    const double log_dens = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta;
    const double slope = std::exp(log_dens - tail) * (lower_side ? 1.0 : -1.0);
    double next = x - g / slope;
    // fall back to bisection whenever Newton leaves the bracket
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * x && std::abs(g) <= 1e-12) return next;
    x = next;
  }
  throw ConvergenceError("beta_quantile: no convergence for a = " + std::to_string(a) +
                         ", b = " + std::to_string(b) + ", q = " + std::to_string(q));
}

}  // namespace longrun::special
