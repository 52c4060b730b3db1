#pragma once

#include <cstdint>

#include "longrun/config.hpp"
#include "longrun/core_dist.hpp"
#include "longrun/extended_real.hpp"
#include "longrun/numeric.hpp"

namespace longrun {

/// The two large-deviation scales of L(n): `near` normalizes by the nominal
/// value log_{1/p} n, `away` by n.
enum class Family { near, away };

const char* to_string(Family family);
Family family_from_string(const char* name);

/// Scaled cumulant of L(n) on one of the two scales.
///   near: lambda below ln(1/p), 2 lambda at ln(1/p), +inf above
///   away: 0 below ln(1/p), lambda - ln(1/p) at and above
struct CumulantSpec {
  Family family;
  BernoulliModel model;
};

/// Rate function on one of the two scales.
///   near: +inf for x < 1, (x - 1) ln(1/p) for x >= 1
///   away: x ln(1/p) on [0, 1], +inf elsewhere
struct RateFunctionSpec {
  Family family;
  BernoulliModel model;
};

ExtendedReal rate(const RateFunctionSpec& spec, double x);

/// `regime_tol` decides when lambda counts as equal to ln(1/p).
ExtendedReal cumulant(const CumulantSpec& spec, double lambda,
                      double regime_tol = default_config().regime_tol);

struct LegendreOptions {
  double tolerance = 1e-8;
  // Report a divergent supremum as +inf rather than throwing DomainError.
  bool allow_infinite = true;
  // Half-width of the first truncation of an unbounded lambda piece, in
  // units of max(1, ln(1/p)).
  double initial_radius = 16.0;
  int max_doublings = 12;
  numeric::MaximizeOptions search{};
};

/// sup over lambda of [lambda x - cumulant(lambda)], found numerically: each
/// affine piece of the cumulant is searched by grid plus golden-section, the
/// isolated critical value of the near family is compared separately, and
/// unbounded pieces are truncated and widened until the objective stops
/// growing.
ExtendedReal legendre_numeric(const CumulantSpec& spec, double x,
                              const LegendreOptions& opts = {});

struct TailOptions {
  // Report an empty event as -inf instead of throwing DomainError.
  bool allow_infinite = true;
};

/// Finite-n version of the upper tail on the near scale:
///   (1/l(n)) ln P(L(n) >= ceil((1 + x) l(n))),   limit -x ln(1/p).
ExtendedReal finite_n_upper_near(std::uint64_t n, double x, const BernoulliModel& model,
                                 const TailOptions& opts = {});

/// Double-logarithmic lower tail on the near scale:
///   (1/l(n)) ln[-ln P(L(n) <= floor((1 - x) l(n)))],   limit x ln(1/p).
double finite_n_lower_near(std::uint64_t n, double x, const BernoulliModel& model);

/// (1/n) ln P(L(n) >= ceil(n x)) for x in [0, 1],   limit -x ln(1/p).
double finite_n_away(std::uint64_t n, double x, const BernoulliModel& model);

/// (1/l(n)) ln P(a <= L(n)/l(n) <= b),   limit -inf of the near rate on [a, b].
ExtendedReal finite_n_interval_near(std::uint64_t n, double a, double b,
                                    const BernoulliModel& model, const TailOptions& opts = {});

/// What the finite-n quantities above become when the exact tail is swapped
/// for the product bounds (n-k+1) ln(1 - p^k) and (n-k+1) ln(1 - q p^k).
struct Bracket {
  ExtendedReal low;
  ExtendedReal high;
};
Bracket bracket_upper_near(std::uint64_t n, double x, const BernoulliModel& model);
Bracket bracket_lower_near(std::uint64_t n, double x, const BernoulliModel& model);
Bracket bracket_away(std::uint64_t n, double x, const BernoulliModel& model);
Bracket bracket_interval_near(std::uint64_t n, double a, double b, const BernoulliModel& model);

/// Limits the finite-n quantities converge to.
double limit_upper_near(double x, const BernoulliModel& model);
double limit_lower_near(double x, const BernoulliModel& model);
double limit_away(double x, const BernoulliModel& model);
ExtendedReal limit_interval_near(double a, double b, const BernoulliModel& model);

/// Integer rounding of real thresholds such as (1 + x) l(n). Values within
/// 1e-9 (relative) of an integer snap to it, so l(2^10) = 10.000000000000002
/// is treated as 10.
std::int64_t ceil_threshold(double v);
std::int64_t floor_threshold(double v);

}  // namespace longrun
