#include "longrun/varadhan.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "longrun/errors.hpp"

namespace longrun {

FunctionalSpec FunctionalSpec::power(double t, double alpha) {
  if (!(t > 0.0)) throw InvalidArgument("power functional: t must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("power functional: alpha must lie in (0, 1)");
  }
  return FunctionalSpec(PowerFunctional{t, alpha});
}

FunctionalSpec FunctionalSpec::bounded(std::function<double(double)> f, double bound) {
  if (!f) throw InvalidArgument("bounded functional: empty callable");
  if (!(bound >= 0.0) || std::isinf(bound)) {
    throw InvalidArgument("bounded functional: bound must be finite and >= 0");
  }
  return FunctionalSpec(BoundedFunctional{std::move(f), bound});
}

FunctionalSpec FunctionalSpec::constant(double c) {
  return bounded([c](double) { return c; }, std::abs(c));
}

double FunctionalSpec::operator()(double x) const {
  if (const auto* pw = std::get_if<PowerFunctional>(&kind_)) {
    return pw->t * std::pow(x, pw->alpha);
  }
  const auto& b = std::get<BoundedFunctional>(kind_);
  const double v = b.f(x);
  if (!(std::abs(v) <= b.bound * (1.0 + 1e-12))) {
    throw DomainError("bounded functional exceeds its declared bound at x = " +
                      std::to_string(x));
  }
  return v;
}

double functional_limit(const FunctionalSpec& f, Family family, const BernoulliModel& model,
                        const FunctionalLimitOptions& opts) {
  const double lp = model.lambda_p();
  if (family == Family::away) {
    const auto objective = [&](double x) { return f(x) - x * lp; };
    return numeric::maximize_on_interval(objective, 0.0, 1.0, opts.search).value;
  }

  const auto objective = [&](double x) { return f(x) - (x - 1.0) * lp; };
  double x_max = opts.initial_x_max;
  const int points = std::max(opts.search.grid_points, 3);
  for (int round = 0;; ++round) {
    const double step = (x_max - 1.0) / (points - 1);
    const double a = objective(x_max - 2.0 * step);
    const double b = objective(x_max - step);
    const double c = objective(x_max);
    if (a > b && b > c) break;
    if (round == opts.max_doublings) {
      throw ConvergenceError("functional_limit: objective still increasing at x = " +
                             std::to_string(x_max) + "; functional grows too fast");
    }
    x_max *= 2.0;
  }
  return numeric::maximize_on_interval(objective, 1.0, x_max, opts.search).value;
}

double power_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  return std::pow(alpha, alpha / (1.0 - alpha)) - std::pow(alpha, 1.0 / (1.0 - alpha));
}

double power_threshold(double alpha, const BernoulliModel& model) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  return std::pow(model.lambda_p(), alpha) / alpha;
}

double power_coefficient(double t, double alpha, const BernoulliModel& model) {
  if (!(t > 0.0)) throw InvalidArgument("power_coefficient: t must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("power_coefficient: alpha must lie in (0, 1)");
  }
  const double ratio = t / std::pow(model.lambda_p(), alpha);
  if (t <= power_threshold(alpha, model)) return ratio;
  return std::pow(ratio, 1.0 / (1.0 - alpha)) * power_constant(alpha) + 1.0;
}

double log_scale_coefficient(double t_nominal, double alpha, const BernoulliModel& model) {
  return t_nominal * std::pow(model.lambda_p(), alpha - 1.0);
}

double nominal_scale_coefficient(double t_log, double alpha, const BernoulliModel& model) {
  return t_log * std::pow(model.lambda_p(), 1.0 - alpha);
}

double finite_n_functional(const RunLengthDistribution& dist, const FunctionalSpec& f,
                           Family family) {
  const std::uint64_t n = dist.n();
  if (n < 2) throw InvalidArgument("finite_n_functional: n must be >= 2");
  const double speed = family == Family::near ? nominal_value(n, dist.model())
                                              : static_cast<double>(n);
  const auto log_pmf = dist.log_pmf();
  std::vector<double> terms(log_pmf.size());
  for (std::size_t k = 0; k < log_pmf.size(); ++k) {
    terms[k] = log_pmf[k] == numeric::neg_inf
                   ? numeric::neg_inf
                   : speed * f(static_cast<double>(k) / speed) + log_pmf[k];
  }
  return numeric::log_sum_exp(terms) / speed;
}

double finite_n_functional(std::uint64_t n, const FunctionalSpec& f, Family family,
                           const BernoulliModel& model, const NumericConfig& config) {
  if (n < 2) throw InvalidArgument("finite_n_functional: n must be >= 2");
  return finite_n_functional(distribution(n, model, config), f, family);
}

}  // namespace longrun
