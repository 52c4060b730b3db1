#pragma once

namespace longrun::special {

/// Inverse standard normal CDF, absolute error <= 1e-10.
/// InvalidArgument unless 0 < q < 1.
double std_normal_quantile(double q);

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1.
/// ConvergenceError if the continued fraction fails to settle.
double regularized_incomplete_beta(double a, double b, double x);

/// x with I_x(a, b) = q, 0 < q < 1, to 1e-12.
double beta_quantile(double a, double b, double q);

}  // namespace longrun::special
