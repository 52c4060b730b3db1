#include "longrun/inference.hpp"

#include <cmath>
#include <sstream>

#include "longrun/config.hpp"
#include "longrun/errors.hpp"
#include "longrun/format.hpp"
#include "longrun/special_functions.hpp"

namespace longrun {

std::string to_string(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::longest_run: return "longest_run";
    case IntervalMethod::wilson: return "wilson";
    case IntervalMethod::clopper_pearson: return "clopper_pearson";
    case IntervalMethod::normal: return "normal";
  }
  return "unknown";
}

IntervalMethod interval_method_from_string(const std::string& s) {
  if (s == "lr" || s == "longest_run") return IntervalMethod::longest_run;
  if (s == "wilson" || s == "ws") return IntervalMethod::wilson;
  if (s == "cp" || s == "clopper_pearson") return IntervalMethod::clopper_pearson;
  if (s == "normal" || s == "n") return IntervalMethod::normal;
  throw InvalidArgument("unknown interval method '" + s + "'");
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

void check_counts(std::uint64_t k, std::uint64_t n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (k > n) throw InvalidArgument("k must not exceed n");
}

}  // namespace

double estimate_run_length(const RunObservation& obs) {
  if (!(obs.p_hat > 0.0 && obs.p_hat < 1.0)) {
    throw InvalidArgument("estimate_run_length: p_hat must lie in (0, 1)");
  }
  if (obs.l_obs > obs.n) throw InvalidArgument("estimate_run_length: l_obs exceeds n");
  const double lam = -std::log(obs.p_hat);
  const double correction = std::log1p(-obs.p_hat) / lam + euler_gamma / lam - 0.5;
  return static_cast<double>(obs.l_obs) - correction;
}

ConfidenceInterval lr_interval(std::uint64_t n, double l_hat, double alpha) {
  check_alpha(alpha);
  const double tail = -std::log(alpha / 2.0);
  if (!(static_cast<double>(n) > tail)) {
    throw InvalidArgument("lr_interval: n must exceed -ln(alpha/2) = " + std::to_string(tail));
  }
  if (!(l_hat > 0.0)) {
    throw InvalidArgument("lr_interval: estimated run length must be > 0, got " +
                          std::to_string(l_hat));
  }
  const double ln_n = std::log(static_cast<double>(n));
  return {IntervalMethod::longest_run, 1.0 - alpha,
          std::exp(-(ln_n - std::log(alpha / 2.0)) / l_hat),
          std::exp(-(ln_n - std::log(tail)) / l_hat)};
}

ConfidenceInterval wilson_interval(std::uint64_t k, std::uint64_t n, double alpha) {
  check_alpha(alpha);
  check_counts(k, n);
  const double z = special::std_normal_quantile(1.0 - alpha / 2.0);
  const double dn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / dn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / dn;
  const double center = (ph + z2 / (2.0 * dn)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / dn + z2 / (4.0 * dn * dn)) / denom;
  // at k = 0 and k = n one endpoint equals p_hat exactly; pin it against rounding
  const double lower = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double upper = k == n ? 1.0 : std::min(1.0, center + half);
  return {IntervalMethod::wilson, 1.0 - alpha, lower, upper};
}

ConfidenceInterval clopper_pearson_interval(std::uint64_t k, std::uint64_t n, double alpha) {
  check_alpha(alpha);
  check_counts(k, n);
  const double dk = static_cast<double>(k);
  const double dn = static_cast<double>(n);
  const double lower = k == 0 ? 0.0 : special::beta_quantile(dk, dn - dk + 1.0, alpha / 2.0);
  const double upper = k == n ? 1.0 : special::beta_quantile(dk + 1.0, dn - dk, 1.0 - alpha / 2.0);
  return {IntervalMethod::clopper_pearson, 1.0 - alpha, lower, upper};
}

ConfidenceInterval normal_interval(std::uint64_t k, std::uint64_t n, double alpha) {
  check_alpha(alpha);
  check_counts(k, n);
  if (k == 0 || k == n) throw InvalidArgument("normal_interval: needs 0 < k < n");
  const double z = special::std_normal_quantile(1.0 - alpha / 2.0);
  const double dn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / dn;
  const double half = z * std::sqrt(ph * (1.0 - ph) / dn);
  return {IntervalMethod::normal, 1.0 - alpha, std::max(0.0, ph - half),
          std::min(1.0, ph + half)};
}

ConfidenceInterval interval(IntervalMethod method, std::uint64_t k, std::uint64_t n,
                            double alpha, std::optional<std::uint64_t> l_obs) {
  switch (method) {
    case IntervalMethod::wilson: return wilson_interval(k, n, alpha);
    case IntervalMethod::clopper_pearson: return clopper_pearson_interval(k, n, alpha);
    case IntervalMethod::normal: return normal_interval(k, n, alpha);
    case IntervalMethod::longest_run: break;
  }
  if (!l_obs) throw InvalidArgument("longest-run interval needs an observed longest run");
  check_counts(k, n);
  const double l_hat =
      estimate_run_length({n, *l_obs, static_cast<double>(k) / static_cast<double>(n)});
  return lr_interval(n, l_hat, alpha);
}

std::vector<TableBlock> table_design(int which) {
  if (which == 1) {
    return {{0.95, 200, {0.965, 0.945, 0.96, 0.95, 0.97}},
            {0.98, 200, {0.98, 0.985, 0.97, 0.98, 0.975}}};
  }
  if (which == 2) return {{0.995, 1000, {0.995, 0.994, 0.995, 0.996, 0.996}}};
  throw InvalidArgument("table must be 1 or 2, got " + std::to_string(which));
}

double round_4dp(double x) { return std::round(x * 1e4) / 1e4; }

std::vector<TableRow> reproduce_table(int which, std::optional<std::uint64_t> l_obs) {
  constexpr double alpha = 0.05;
  std::vector<IntervalMethod> methods;
  if (which == 2) methods.push_back(IntervalMethod::normal);
  methods.push_back(IntervalMethod::wilson);
  methods.push_back(IntervalMethod::clopper_pearson);
  if (l_obs) methods.push_back(IntervalMethod::longest_run);

  std::vector<TableRow> rows;
  for (const auto& block : table_design(which)) {
    for (double p_hat : block.p_hats) {
      const auto k = static_cast<std::uint64_t>(std::llround(p_hat * static_cast<double>(block.n)));
      for (IntervalMethod m : methods) {
        const ConfidenceInterval ci = interval(m, k, block.n, alpha, l_obs);
        rows.push_back({which, block.block_p, p_hat, block.n, alpha, ci, round_4dp(ci.lower),
                        round_4dp(ci.upper)});
      }
    }
  }
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "table_id,block_p,p_hat,n,alpha,method,lower,upper,lower_4dp,upper_4dp\n";
  for (const auto& r : rows) {
    out << r.table_id << ',' << format_double(r.block_p) << ',' << format_double(r.p_hat) << ','
        << r.n << ',' << format_double(r.alpha) << ',' << to_string(r.ci.method) << ','
        << format_double(r.ci.lower) << ',' << format_double(r.ci.upper) << ','
        << format_double(r.lower_4dp) << ',' << format_double(r.upper_4dp) << '\n';
  }
  return out.str();
}

}  // namespace longrun
