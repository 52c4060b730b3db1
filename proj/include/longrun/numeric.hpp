#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>

namespace longrun::numeric {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// Neumaier's variant of compensated summation.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// ln(e^a + e^b); either argument may be -inf.
inline double log_add_exp(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

/// ln(e^a - e^b) for a >= b. Returns -inf when a == b.
double log_diff_exp(double a, double b);

/// Max-shifted ln(sum_i e^{x_i}) with compensated accumulation.
/// -inf entries are skipped; an empty or all -inf input yields -inf.
double log_sum_exp(std::span<const double> xs);

/// ln(1 - e^x) for x <= 0, switching between log1p and expm1 forms.
double log1m_exp(double x);

struct MaximizeOptions {
  int grid_points = 2001;
  // Golden-section stops once the bracket is below this (absolute, scaled by
  // max(1, |x|)).
  double x_tolerance = 1e-13;
  int max_iterations = 500;
};

struct MaximizeResult {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximizes f over the closed interval [lo, hi] by an equispaced grid
/// followed by golden-section refinement in the bracket around the best grid
/// point. Both endpoints are always candidates.
MaximizeResult maximize_on_interval(const std::function<double(double)>& f, double lo,
                                    double hi, const MaximizeOptions& opts = {});

}  // namespace longrun::numeric
