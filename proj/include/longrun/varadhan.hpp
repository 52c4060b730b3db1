#pragma once

#include <cstdint>
#include <functional>
#include <variant>

#include "longrun/core_dist.hpp"
#include "longrun/ldp.hpp"
#include "longrun/numeric.hpp"

namespace longrun {

/// f(x) = t x^alpha with t > 0 and 0 < alpha < 1, on the near scale.
struct PowerFunctional {
  double t;
  double alpha;
};

/// Any continuous f with |f| <= bound on the rate function's effective
/// domain. The bound is what makes the functional admissible; it is checked
/// at every evaluation.
struct BoundedFunctional {
  std::function<double(double)> f;
  double bound;
};

/// The functional inside the exponential moment. Only these two kinds are
/// accepted: they are the ones whose growth conditions are known to hold.
class FunctionalSpec {
 public:
  static FunctionalSpec power(double t, double alpha);
  static FunctionalSpec bounded(std::function<double(double)> f, double bound);
  static FunctionalSpec constant(double c);

  double operator()(double x) const;
  bool is_power() const { return std::holds_alternative<PowerFunctional>(kind_); }
  const PowerFunctional& as_power() const { return std::get<PowerFunctional>(kind_); }

 private:
  explicit FunctionalSpec(std::variant<PowerFunctional, BoundedFunctional> kind)
      : kind_(std::move(kind)) {}

  std::variant<PowerFunctional, BoundedFunctional> kind_;
};

struct FunctionalLimitOptions {
  // first right end of the near-scale search interval [1, x_max]
  double initial_x_max = 10.0;
  int max_doublings = 30;
  numeric::MaximizeOptions search{};
};

/// max over x of f(x) - rate(family, x), the large-n limit of
/// finite_n_functional. The near-scale search starts on [1, 10] and doubles
/// the right end until the objective falls over the last three grid points;
/// ConvergenceError if it never does.
double functional_limit(const FunctionalSpec& f, Family family, const BernoulliModel& model,
                        const FunctionalLimitOptions& opts = {});

/// Coefficient c in ln E exp{t (ln n)^{1-alpha} L(n)^alpha} ~ c ln n:
///   t / ln^alpha(1/p)                                  if t <= ln^alpha(1/p)/alpha,
///   (t / ln^alpha(1/p))^{1/(1-alpha)} C_alpha + 1      otherwise,
/// with C_alpha = alpha^{alpha/(1-alpha)} - alpha^{1/(1-alpha)}.
double power_coefficient(double t, double alpha, const BernoulliModel& model);

/// Threshold t* = ln^alpha(1/p) / alpha separating the two branches above.
double power_threshold(double alpha, const BernoulliModel& model);

/// C_alpha = alpha^{alpha/(1-alpha)} - alpha^{1/(1-alpha)}.
double power_constant(double alpha);

/// Change of variables between the two ways of writing the power functional.
/// On the near scale, l(n) f(L/l(n)) with f = t' x^alpha equals
/// t (ln n)^{1-alpha} L^alpha for t = t' ln(1/p)^{alpha-1}, and
///   functional_limit(power(t', alpha)) / ln(1/p) = power_coefficient(t, alpha).
double log_scale_coefficient(double t_nominal, double alpha, const BernoulliModel& model);
double nominal_scale_coefficient(double t_log, double alpha, const BernoulliModel& model);

/// near: (1/l(n)) ln E exp{l(n) f(L(n)/l(n))};  away: (1/n) ln E exp{n f(L(n)/n)}.
double finite_n_functional(const RunLengthDistribution& dist, const FunctionalSpec& f,
                           Family family);
double finite_n_functional(std::uint64_t n, const FunctionalSpec& f, Family family,
                           const BernoulliModel& model,
                           const NumericConfig& config = default_config());

}  // namespace longrun
