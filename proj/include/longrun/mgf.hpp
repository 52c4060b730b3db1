#pragma once

#include <cstdint>
#include <vector>

#include "longrun/config.hpp"
#include "longrun/core_dist.hpp"
#include "longrun/extended_real.hpp"
#include "longrun/ldp.hpp"

namespace longrun {

/// Normalization of ln E e^{lambda L(n)}: by the nominal value (near) or by n
/// (away).
using Speed = Family;

enum class Regime { subcritical, critical, supercritical };

const char* to_string(Regime regime);

/// Position of lambda relative to the critical point ln(1/p).
struct MgfRegime {
  Regime tag;
  double lambda;
  BernoulliModel model;

  static MgfRegime classify(double lambda, const BernoulliModel& model,
                            double tol = default_config().regime_tol);
  /// Caller-imposed tag, e.g. to evaluate the critical formula at a lambda
  /// that is only approximately ln(1/p).
  static MgfRegime forced(Regime tag, double lambda, const BernoulliModel& model) {
    return {tag, lambda, model};
  }
};

/// ln E e^{lambda L(n)} from the exact pmf (max-shifted log-sum-exp).
double log_mgf(const RunLengthDistribution& dist, double lambda);

/// Laws of L(m) for every m <= n_max built from the first-failure
/// decomposition L(m) = max(L(m - j - 1), j) with probability q p^j, and
/// L(m) = m with probability p^m. Shares no code path with `distribution`,
/// which makes it usable as an oracle. O(n_max^3) to build.
class RecursionOracle {
 public:
  RecursionOracle(std::uint64_t n_max, const BernoulliModel& model,
                  const NumericConfig& config = default_config());

  std::uint64_t n_max() const { return n_max_; }

  /// ln E e^{lambda L(n)} via
  ///   q sum_{j<n} p^j E e^{lambda max(L(n-j-1), j)} + p^n e^{lambda n}.
  double log_mgf(std::uint64_t n, double lambda) const;

  /// ln P(L(m) <= j) and ln P(L(m) > j) for m < n_max.
  double log_cdf(std::uint64_t m, std::uint64_t j) const;
  double log_sf(std::uint64_t m, std::uint64_t j) const;

 private:
  double log_pmf(std::uint64_t m, std::uint64_t k) const;
  std::size_t index(std::uint64_t m, std::uint64_t j) const { return m * (m - 1) / 2 + j; }

  std::uint64_t n_max_;
  BernoulliModel model_;
  // Row m holds j = 0..m-1 (j >= m is trivial).
  std::vector<double> log_cdf_;
  std::vector<double> log_sf_;
};

/// One-shot recursion evaluation; the memo table lives for this call only.
double log_mgf_recursive(std::uint64_t n, const BernoulliModel& model, double lambda,
                         const NumericConfig& config = default_config());

/// log_mgf / l(n) for the near speed, log_mgf / n for the away speed.
double normalized_log_mgf(const RunLengthDistribution& dist, double lambda, Speed speed);
double normalized_log_mgf(std::uint64_t n, const BernoulliModel& model, double lambda,
                          Speed speed, const NumericConfig& config = default_config());

/// Large-n limit of normalized_log_mgf: the scaled cumulant for the speed.
ExtendedReal mgf_limit(const MgfRegime& regime, Speed speed);
ExtendedReal mgf_limit(double lambda, const BernoulliModel& model, Speed speed);

}  // namespace longrun
