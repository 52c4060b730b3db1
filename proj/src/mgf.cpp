#include "longrun/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "longrun/errors.hpp"
#include "longrun/numeric.hpp"

namespace longrun {

using numeric::neg_inf;

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    default: return "supercritical";
  }
}

MgfRegime MgfRegime::classify(double lambda, const BernoulliModel& model, double tol) {
  const double lp = model.lambda_p();
  Regime tag = Regime::critical;
  if (lambda < lp - tol) tag = Regime::subcritical;
  if (lambda > lp + tol) tag = Regime::supercritical;
  return {tag, lambda, model};
}

double log_mgf(const RunLengthDistribution& dist, double lambda) {
  const auto log_pmf = dist.log_pmf();
  std::vector<double> terms(log_pmf.size());
  for (std::size_t k = 0; k < log_pmf.size(); ++k) {
    terms[k] = log_pmf[k] == neg_inf ? neg_inf : lambda * static_cast<double>(k) + log_pmf[k];
  }
  return numeric::log_sum_exp(terms);
}

namespace {

// Streaming log-sum-exp.
class LogAccumulator {
 public:
  void add(double x) {
    if (x == neg_inf) return;
    if (x > hi_) {
      acc_ = acc_ * std::exp(hi_ - x) + 1.0;
      hi_ = x;
    } else {
      acc_ += std::exp(x - hi_);
    }
  }
  double value() const { return hi_ == neg_inf ? neg_inf : hi_ + std::log(acc_); }

 private:
  double hi_ = neg_inf;
  double acc_ = 0.0;
};

}  // namespace

RecursionOracle::RecursionOracle(std::uint64_t n_max, const BernoulliModel& model,
                                 const NumericConfig& config)
    : n_max_(n_max), model_(model) {
  if (n_max < 1) throw InvalidArgument("RecursionOracle: n must be >= 1");
  if (n_max > config.max_n_recursion) {
    throw ResourceError("n = " + std::to_string(n_max) + " exceeds the recursion cap " +
                        std::to_string(config.max_n_recursion));
  }
  const std::size_t rows = n_max;  // m = 0..n_max-1
  log_cdf_.resize(rows * (rows - 1) / 2);
  log_sf_.resize(rows * (rows - 1) / 2);

  const double log_q = model.log_q();
  const double log_p = model.log_p();
  // For j < m only the first j+1 failure positions keep the max below j + 1:
  //   P(L(m) <= j) = sum_{i<=j} q p^i P(L(m-1-i) <= j)
  //   P(L(m) >  j) = sum_{i<=j} q p^i P(L(m-1-i) >  j) + p^{j+1}
  // Both sums have positive terms only.
  for (std::uint64_t m = 1; m < n_max; ++m) {
    for (std::uint64_t j = 0; j < m; ++j) {
      LogAccumulator below;
      LogAccumulator above;
      for (std::uint64_t i = 0; i <= j; ++i) {
        const double w = log_q + static_cast<double>(i) * log_p;
        const std::uint64_t rest = m - 1 - i;
        below.add(w + log_cdf(rest, j));
        above.add(w + log_sf(rest, j));
      }
      above.add(static_cast<double>(j + 1) * log_p);
      log_cdf_[index(m, j)] = below.value();
      log_sf_[index(m, j)] = above.value();
    }
  }
}

double RecursionOracle::log_cdf(std::uint64_t m, std::uint64_t j) const {
  return j >= m ? 0.0 : log_cdf_[index(m, j)];
}

double RecursionOracle::log_sf(std::uint64_t m, std::uint64_t j) const {
  return j >= m ? neg_inf : log_sf_[index(m, j)];
}

double RecursionOracle::log_pmf(std::uint64_t m, std::uint64_t k) const {
  if (k == 0) return log_cdf(m, 0);
  // difference on the smaller side of the law
  if (log_cdf(m, k) <= log_sf(m, k - 1)) {
    return numeric::log_diff_exp(log_cdf(m, k), log_cdf(m, k - 1));
  }
  return numeric::log_diff_exp(log_sf(m, k - 1), log_sf(m, k));
}

double RecursionOracle::log_mgf(std::uint64_t n, double lambda) const {
  if (n < 1 || n > n_max_) {
    throw InvalidArgument("RecursionOracle::log_mgf: n outside [1, " + std::to_string(n_max_) +
                          "]");
  }
  const double log_q = model_.log_q();
  const double log_p = model_.log_p();
  LogAccumulator total;
  for (std::uint64_t j = 0; j < n; ++j) {
    const std::uint64_t m = n - j - 1;
    // E e^{lambda max(L(m), j)} = e^{lambda j} P(L(m) <= j) + sum_{k>j} e^{lambda k} P(L(m)=k)
    LogAccumulator inner;
    inner.add(lambda * static_cast<double>(j) + log_cdf(m, j));
    for (std::uint64_t k = j + 1; k <= m; ++k) {
      inner.add(lambda * static_cast<double>(k) + log_pmf(m, k));
    }
    total.add(log_q + static_cast<double>(j) * log_p + inner.value());
  }
  total.add(static_cast<double>(n) * (log_p + lambda));
  return total.value();
}

double log_mgf_recursive(std::uint64_t n, const BernoulliModel& model, double lambda,
                         const NumericConfig& config) {
  return RecursionOracle(n, model, config).log_mgf(n, lambda);
}

double normalized_log_mgf(const RunLengthDistribution& dist, double lambda, Speed speed) {
  if (dist.n() < 2) throw InvalidArgument("normalized_log_mgf: n must be >= 2");
  const double scale = speed == Speed::near ? nominal_value(dist.n(), dist.model())
                                            : static_cast<double>(dist.n());
  return log_mgf(dist, lambda) / scale;
}

double normalized_log_mgf(std::uint64_t n, const BernoulliModel& model, double lambda,
                          Speed speed, const NumericConfig& config) {
  if (n < 2) throw InvalidArgument("normalized_log_mgf: n must be >= 2");
  return normalized_log_mgf(distribution(n, model, config), lambda, speed);
}

ExtendedReal mgf_limit(const MgfRegime& regime, Speed speed) {
  const double lambda = regime.lambda;
  const double lp = regime.model.lambda_p();
  if (speed == Speed::near) {
    switch (regime.tag) {
      case Regime::subcritical: return ExtendedReal(lambda);
      case Regime::critical: return ExtendedReal(2.0 * lambda);
      default: return ExtendedReal::pos_inf();
    }
  }
  if (regime.tag == Regime::subcritical) return ExtendedReal(0.0);
  return ExtendedReal(lambda - lp);
}

ExtendedReal mgf_limit(double lambda, const BernoulliModel& model, Speed speed) {
  return cumulant({speed, model}, lambda);
}

}  // namespace longrun
