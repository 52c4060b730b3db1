#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "longrun/config.hpp"

namespace longrun {

/// Bernoulli(p) trial model with 0 < p < 1. Holds the derived failure
/// probability q = 1 - p and the recurring constant ln(1/p).
class BernoulliModel {
 public:
  explicit BernoulliModel(double p);

  double p() const { return p_; }
  double q() const { return q_; }
  /// ln(1/p) = -ln p, in nats.
  double lambda_p() const { return lambda_p_; }
  double log_p() const { return -lambda_p_; }
  double log_q() const { return log_q_; }

 private:
  double p_;
  double q_;
  double lambda_p_;
  double log_q_;
};

/// Nominal value log_{1/p} n of the longest run.
double nominal_value(std::uint64_t n, const BernoulliModel& model);

/// Longest block of consecutive ones, single left-to-right pass.
std::uint64_t longest_run(std::span<const std::uint8_t> bits);

/// ln P(L(n) < k), exact up to rounding. Zero when k > n.
double log_prob_no_run(std::uint64_t n, std::uint64_t k, const BernoulliModel& model,
                       const NumericConfig& config = default_config());

/// ln P(L(n) >= k), accurate in the far upper tail where 1 - P(L(n) < k)
/// would cancel. Zero when k == 0, -inf when k > n.
double log_prob_run_at_least(std::uint64_t n, std::uint64_t k, const BernoulliModel& model,
                             const NumericConfig& config = default_config());

/// Both tails for one (n, k) from a single pass of the recurrence.
struct TailPair {
  double log_below;     // ln P(L(n) < k)
  double log_at_least;  // ln P(L(n) >= k)
};
TailPair log_tails(std::uint64_t n, std::uint64_t k, const BernoulliModel& model,
                   const NumericConfig& config = default_config());

/// Lower and upper bounds on ln P(L(n) < k):
///   (n-k+1) ln(1 - p^k) <= ln P(L(n) < k) <= (n-k+1) ln(1 - q p^k).
struct LogBounds {
  double log_lower;
  double log_upper;
};
LogBounds tail_bounds(std::uint64_t n, std::uint64_t k, const BernoulliModel& model);

/// The same bounds moved to the complement, ln P(L(n) >= k), evaluated
/// without forming 1 - p^k so they stay finite when p^k underflows.
LogBounds tail_bounds_at_least(std::uint64_t n, std::uint64_t k, const BernoulliModel& model);

/// The exact law of L(n) for one (n, p), held in the log domain.
/// Immutable after construction.
class RunLengthDistribution {
 public:
  std::uint64_t n() const { return n_; }
  const BernoulliModel& model() const { return model_; }

  /// Entry k = ln P(L(n) < k), k = 0..n+1.
  std::span<const double> log_cdf() const { return log_cdf_; }
  /// Entry k = ln P(L(n) >= k), k = 0..n+1.
  std::span<const double> log_sf() const { return log_sf_; }
  /// Entry k = ln P(L(n) = k), k = 0..n.
  std::span<const double> log_pmf() const { return log_pmf_; }

  double pmf(std::uint64_t k) const;
  /// P(L(n) <= k).
  double cdf(std::uint64_t k) const;

 private:
  friend RunLengthDistribution distribution(std::uint64_t, const BernoulliModel&,
                                            const NumericConfig&);
  RunLengthDistribution(std::uint64_t n, BernoulliModel model) : n_(n), model_(model) {}

  std::uint64_t n_;
  BernoulliModel model_;
  std::vector<double> log_cdf_;
  std::vector<double> log_sf_;
  std::vector<double> log_pmf_;
};

RunLengthDistribution distribution(std::uint64_t n, const BernoulliModel& model,
                                   const NumericConfig& config = default_config());

/// E L(n)^order from the exact pmf, compensated summation.
double moment(const RunLengthDistribution& dist, unsigned order);

/// log_{1/p} n + log_{1/p}(1-p) + gamma/ln(1/p) - 1/2, the asymptotic mean with
/// the vanishing correction dropped.
double mean_asymptotic(std::uint64_t n, const BernoulliModel& model);

}  // namespace longrun
