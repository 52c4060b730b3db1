#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace longrun {

enum class IntervalMethod { longest_run, wilson, clopper_pearson, normal };
std::string to_string(IntervalMethod m);
/// Accepts the long names and the short forms lr, wilson/ws, cp, normal/n.
IntervalMethod interval_method_from_string(const std::string& s);

struct ConfidenceInterval {
  IntervalMethod method;
  double level;  // 1 - alpha
  double lower;
  double upper;

  double width() const { return upper - lower; }
  bool contains(double p) const { return lower <= p && p <= upper; }
};

struct RunObservation {
  std::uint64_t n;
  std::uint64_t l_obs;
  double p_hat;
};

/// L_hat = l_obs - [log_{1/p_hat}(1 - p_hat) + gamma/ln(1/p_hat) - 1/2], not rounded.
double estimate_run_length(const RunObservation& obs);

/// (exp{-(ln n - ln(alpha/2))/L_hat}, exp{-(ln n - ln(-ln(alpha/2)))/L_hat}).
/// InvalidArgument when n <= -ln(alpha/2) or l_hat <= 0.
ConfidenceInterval lr_interval(std::uint64_t n, double l_hat, double alpha);

/// Uncorrected score interval.
ConfidenceInterval wilson_interval(std::uint64_t k, std::uint64_t n, double alpha);
/// Exact interval from Beta quantiles; lower = 0 at k = 0, upper = 1 at k = n.
ConfidenceInterval clopper_pearson_interval(std::uint64_t k, std::uint64_t n, double alpha);
/// p_hat +- z sqrt(p_hat (1 - p_hat) / n), clipped to [0, 1]. Needs 0 < k < n.
ConfidenceInterval normal_interval(std::uint64_t k, std::uint64_t n, double alpha);

/// Dispatch on method; lr needs an observation, the others only (k, n).
ConfidenceInterval interval(IntervalMethod method, std::uint64_t k, std::uint64_t n,
                            double alpha, std::optional<std::uint64_t> l_obs = std::nullopt);

struct TableRow {
  int table_id;
  double block_p;
  double p_hat;
  std::uint64_t n;
  double alpha;
  ConfidenceInterval ci;
  double lower_4dp;
  double upper_4dp;
};

/// Published design of one table: (block_p, n, p_hat list), alpha = 0.05.
struct TableBlock {
  double block_p;
  std::uint64_t n;
  std::vector<double> p_hats;
};
std::vector<TableBlock> table_design(int which);

/// Recomputes every Wilson, Clopper-Pearson (and, for the second table, normal)
/// cell with k = round(p_hat n).
/// With l_obs set, LR rows are added as formula demonstrations at that run.
std::vector<TableRow> reproduce_table(int which,
                                      std::optional<std::uint64_t> l_obs = std::nullopt);

double round_4dp(double x);

/// table_id,block_p,p_hat,n,alpha,method,lower,upper,lower_4dp,upper_4dp
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace longrun
