#pragma once

#include <cstddef>

namespace longrun {

/// Tolerances and resource caps shared across modules. One record so that a
/// caller (or the CLI's LONGRUN_MAX_N override) can adjust them in one place.
struct NumericConfig {
  // |lambda - ln(1/p)| at or below this is the critical regime.
  double regime_tol = 1e-12;
  // Above this n*p^k the exact-law recurrence runs; below it the tail
  // P(L(n) >= k) = p^k (1 + q (n - k)) holds to within relative n*p^k.
  double closed_form_tail = 1e-18;
  std::size_t max_n_single = 1'000'000;
  std::size_t max_n_distribution = 1'000'000;
  std::size_t max_n_recursion = 2000;
};

/// Process-wide defaults. Read-only after startup.
const NumericConfig& default_config();

/// Replaces the process-wide defaults. Not thread-safe; call before any
/// concurrent use (the CLI does this once while parsing the environment).
void set_default_config(const NumericConfig& config);

/// Library version, "major.minor.patch".
const char* version();

inline constexpr double euler_gamma = 0.577215664901532860606512;

}  // namespace longrun
