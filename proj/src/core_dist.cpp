#include "longrun/core_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "longrun/errors.hpp"
#include "longrun/numeric.hpp"

namespace longrun {

using numeric::neg_inf;

BernoulliModel::BernoulliModel(double p) : p_(p), q_(1.0 - p), lambda_p_(-std::log(p)) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("success probability must lie in (0, 1), got " + std::to_string(p));
  }
  log_q_ = std::log1p(-p);
}

double nominal_value(std::uint64_t n, const BernoulliModel& model) {
  if (n < 1) throw InvalidArgument("nominal_value: n must be >= 1");
  return std::log(static_cast<double>(n)) / model.lambda_p();
}

std::uint64_t longest_run(std::span<const std::uint8_t> bits) {
  std::uint64_t best = 0;
  std::uint64_t current = 0;
  for (std::uint8_t b : bits) {
    current = b ? current + 1 : 0;
    best = std::max(best, current);
  }
  return best;
}

namespace {

// Ring of the most recent per-step log-ratios ln(a_j / a_{j-1}).
class RatioWindow {
 public:
  explicit RatioWindow(std::size_t size) : buf_(size, 0.0) {}

  // ratio j steps back, j = 1..size
  double back(std::size_t j) const { return buf_[(head_ + buf_.size() - j) % buf_.size()]; }
  void push(double r) {
    buf_[head_] = r;
    head_ = (head_ + 1) % buf_.size();
  }
  double sum() const {
    numeric::KahanSum s;
    for (double r : buf_) s += r;
    return s.value();
  }

 private:
  std::vector<double> buf_;
  std::size_t head_ = 0;
};

// ln a_n with a_m = P(L(m) < k), 2 <= k, 2k + 1 <= n.
//
// Two forms of the same recurrence. The telescoped one,
//   a_m = a_{m-1} - q p^k a_{m-k-1},
// is O(1) per step but carries a parasitic root at z = p; it is only stable
// when the true decay rate exceeds p, which holds for k > p/q. Below that the
// first-failure sum
//   a_m = q * sum_{i<k} p^i a_{m-1-i}
// is used (positive terms, O(k) per step). Both work on ratios a_m/a_{m-1} so
// nothing underflows, and both stop early once the ratio is stationary.
double log_no_run_recurrence(std::uint64_t n, std::uint64_t k, const BernoulliModel& model) {
  const double log_pk = static_cast<double>(k) * model.log_p();
  const bool telescoped = static_cast<double>(k) > 2.0 * model.p() / model.q();

  RatioWindow window(k);
  // a_0..a_{k-1} = 1, a_k = 1 - p^k
  const double first = std::log1p(-std::exp(log_pk));
  window.push(first);
  numeric::KahanSum total;
  total += first;

  const double log_qpk = model.log_q() + log_pk;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double prev = first;
  double span_sum = window.sum();
  std::uint64_t stable = 0;

  for (std::uint64_t m = k + 1; m <= n; ++m) {
    double r;
    if (telescoped) {
      // span_sum = ln(a_{m-1} / a_{m-1-k})
      r = std::log1p(-std::exp(log_qpk - span_sum));
    } else {
      // ln(q * sum_i p^i a_{m-1-i} / a_{m-1}), online log-sum-exp
      double hi = 0.0;
      double acc = 1.0;
      double behind = 0.0;
      for (std::uint64_t i = 1; i < k; ++i) {
        behind += window.back(i);
        const double t = static_cast<double>(i) * model.log_p() - behind;
        if (t > hi) {
          acc = acc * std::exp(hi - t) + 1.0;
          hi = t;
        } else {
          acc += std::exp(t - hi);
        }
      }
      r = model.log_q() + hi + std::log(acc);
    }
    const double dropped = window.back(k);
    window.push(r);
    total += r;
    span_sum += r - dropped;
    if ((m & 1023) == 0) span_sum = window.sum();

    stable = std::abs(r - prev) <= 4.0 * eps * std::abs(r) ? stable + 1 : 0;
    prev = r;
    if (stable > k + 1) {
      total += static_cast<double>(n - m) * r;
      break;
    }
  }
  return total.value();
}

void check_single_cap(std::uint64_t n, const NumericConfig& config) {
  if (n > config.max_n_single) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds the single-query cap " +
                        std::to_string(config.max_n_single));
  }
}

}  // namespace

TailPair log_tails(std::uint64_t n, std::uint64_t k, const BernoulliModel& model,
                   const NumericConfig& config) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  check_single_cap(n, config);
  if (k == 0) return {neg_inf, 0.0};
  if (k > n) return {0.0, neg_inf};
  if (k == 1) {
    const double below = static_cast<double>(n) * model.log_q();
    return {below, numeric::log1m_exp(below)};
  }
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  const double log_pk = dk * model.log_p();
  // Disjoint-run closed form: exact when two k-runs cannot both fit.
  if (2 * k + 1 > n || std::log(dn) + log_pk < std::log(config.closed_form_tail)) {
    const double at_least = log_pk + std::log1p(model.q() * (dn - dk));
    return {numeric::log1m_exp(at_least), at_least};
  }
  const double below = log_no_run_recurrence(n, k, model);
  return {below, numeric::log1m_exp(below)};
}

double log_prob_no_run(std::uint64_t n, std::uint64_t k, const BernoulliModel& model,
                       const NumericConfig& config) {
  if (k < 1) throw InvalidArgument("log_prob_no_run: k must be >= 1");
  return log_tails(n, k, model, config).log_below;
}

double log_prob_run_at_least(std::uint64_t n, std::uint64_t k, const BernoulliModel& model,
                             const NumericConfig& config) {
  return log_tails(n, k, model, config).log_at_least;
}

LogBounds tail_bounds(std::uint64_t n, std::uint64_t k, const BernoulliModel& model) {
  if (k < 1 || k > n) throw InvalidArgument("tail_bounds: need 1 <= k <= n");
  const double factors = static_cast<double>(n - k + 1);
  const double pk = std::exp(static_cast<double>(k) * model.log_p());
  return {factors * std::log1p(-pk), factors * std::log1p(-model.q() * pk)};
}

namespace {

// ln(1 - (1 - e^t)^m) for t < 0, m >= 1.
double log_one_minus_power(double m, double t) {
  if (t < -40.0) {
    // -ln(1 - e^t) = e^t (1 + O(e^t)), exact to rounding here
    const double s = std::log(m) + t;  // ln(m e^t) = ln(-m ln(1 - e^t))
    return s < -40.0 ? s : numeric::log1m_exp(-std::exp(s));
  }
  return numeric::log1m_exp(m * std::log1p(-std::exp(t)));
}

}  // namespace

LogBounds tail_bounds_at_least(std::uint64_t n, std::uint64_t k, const BernoulliModel& model) {
  if (k < 1 || k > n) throw InvalidArgument("tail_bounds_at_least: need 1 <= k <= n");
  const double factors = static_cast<double>(n - k + 1);
  const double log_pk = static_cast<double>(k) * model.log_p();
  return {log_one_minus_power(factors, model.log_q() + log_pk),
          log_one_minus_power(factors, log_pk)};
}

double RunLengthDistribution::pmf(std::uint64_t k) const {
  if (k > n_) return 0.0;
  return std::exp(log_pmf_[k]);
}

double RunLengthDistribution::cdf(std::uint64_t k) const {
  if (k >= n_) return 1.0;
  return std::exp(log_cdf_[k + 1]);
}

RunLengthDistribution distribution(std::uint64_t n, const BernoulliModel& model,
                                   const NumericConfig& config) {
  if (n < 1) throw InvalidArgument("distribution: n must be >= 1");
  if (n > config.max_n_distribution) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds the distribution cap " +
                        std::to_string(config.max_n_distribution));
  }
  RunLengthDistribution d(n, model);
  d.log_cdf_.assign(n + 2, 0.0);
  d.log_sf_.assign(n + 2, 0.0);
  d.log_cdf_[0] = neg_inf;
  d.log_sf_[n + 1] = neg_inf;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const TailPair t = log_tails(n, k, model, config);
    d.log_cdf_[k] = t.log_below;
    d.log_sf_[k] = t.log_at_least;
  }
  d.log_pmf_.resize(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    // Difference on whichever side of the law is smaller, to avoid cancelling
    // two numbers close to one.
    if (d.log_cdf_[k + 1] <= d.log_sf_[k]) {
      d.log_pmf_[k] = numeric::log_diff_exp(d.log_cdf_[k + 1], d.log_cdf_[k]);
    } else {
      d.log_pmf_[k] = numeric::log_diff_exp(d.log_sf_[k], d.log_sf_[k + 1]);
    }
  }
  return d;
}

double moment(const RunLengthDistribution& dist, unsigned order) {
  if (order < 1) throw InvalidArgument("moment: order must be >= 1");
  numeric::KahanSum sum;
  const auto log_pmf = dist.log_pmf();
  for (std::size_t k = 1; k < log_pmf.size(); ++k) {
    if (log_pmf[k] == neg_inf) continue;
    sum += std::exp(static_cast<double>(order) * std::log(static_cast<double>(k)) + log_pmf[k]);
  }
  return sum.value();
}

double mean_asymptotic(std::uint64_t n, const BernoulliModel& model) {
  if (n < 2) throw InvalidArgument("mean_asymptotic: n must be >= 2");
  const double lp = model.lambda_p();
  return std::log(static_cast<double>(n)) / lp + model.log_q() / lp + euler_gamma / lp - 0.5;
}

}  // namespace longrun
