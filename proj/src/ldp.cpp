#include "longrun/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "longrun/errors.hpp"

namespace longrun {

using numeric::neg_inf;

const char* to_string(Family family) { return family == Family::near ? "near" : "away"; }

Family family_from_string(const char* name) {
  if (std::strcmp(name, "near") == 0) return Family::near;
  if (std::strcmp(name, "away") == 0) return Family::away;
  throw InvalidArgument(std::string("unknown family '") + name + "' (expected near|away)");
}

std::int64_t ceil_threshold(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(v));
}

std::int64_t floor_threshold(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(v));
}

ExtendedReal rate(const RateFunctionSpec& spec, double x) {
  if (std::isnan(x)) throw InvalidArgument("rate: x is NaN");
  const double lp = spec.model.lambda_p();
  if (spec.family == Family::near) {
    if (x < 1.0) return ExtendedReal::pos_inf();
    if (x == INFINITY) return ExtendedReal::pos_inf();
    return ExtendedReal((x - 1.0) * lp);
  }
  if (x < 0.0 || x > 1.0) return ExtendedReal::pos_inf();
  return ExtendedReal(x * lp);
}

ExtendedReal cumulant(const CumulantSpec& spec, double lambda, double regime_tol) {
  if (std::isnan(lambda)) throw InvalidArgument("cumulant: lambda is NaN");
  const double lp = spec.model.lambda_p();
  const bool critical = std::abs(lambda - lp) <= regime_tol;
  if (spec.family == Family::near) {
    if (critical) return ExtendedReal(2.0 * lambda);
    if (lambda < lp) return ExtendedReal(lambda);
    return ExtendedReal::pos_inf();
  }
  if (critical || lambda > lp) return ExtendedReal(lambda - lp);
  return ExtendedReal(0.0);
}

namespace {

// One affine piece of a cumulant: value(lambda) = slope * lambda + offset on
// an interval whose ends may be unbounded. The supremum of lambda x - value
// over an open end equals the limit at that end, so the closure is searched.
struct Piece {
  double lo;  // -inf allowed
  double hi;  // +inf allowed
  double slope;
  double offset;
};

ExtendedReal sup_over_piece(const Piece& piece, double x, double scale,
                            const LegendreOptions& opts) {
  const auto objective = [&](double lambda) {
    return lambda * x - (piece.slope * lambda + piece.offset);
  };
  double radius = opts.initial_radius * scale;
  double prev = 0.0;
  for (int round = 0; round <= opts.max_doublings; ++round) {
    const double lo = std::isinf(piece.lo) ? piece.hi - radius : piece.lo;
    const double hi = std::isinf(piece.hi) ? piece.lo + radius : piece.hi;
    const auto best = numeric::maximize_on_interval(objective, lo, hi, opts.search);
    const double width = hi - lo;
    const bool at_open_end = (std::isinf(piece.lo) && best.argmax - lo <= 1e-9 * width) ||
                             (std::isinf(piece.hi) && hi - best.argmax <= 1e-9 * width);
    if (!at_open_end) return ExtendedReal(best.value);
    // Still pinned to a truncated end: growing means the supremum diverges,
    // a plateau means the end value is the supremum.
    if (round > 0 && best.value <= prev + opts.tolerance) return ExtendedReal(best.value);
    prev = best.value;
    radius *= 2.0;
  }
  return ExtendedReal::pos_inf();
}

}  // namespace

ExtendedReal legendre_numeric(const CumulantSpec& spec, double x, const LegendreOptions& opts) {
  if (std::isnan(x)) throw InvalidArgument("legendre_numeric: x is NaN");
  const double lp = spec.model.lambda_p();
  const double scale = std::max(1.0, lp);

  ExtendedReal best = ExtendedReal::neg_inf();
  const auto consider = [&](ExtendedReal v) {
    if (v > best) best = v;
  };
  if (spec.family == Family::near) {
    consider(sup_over_piece({-INFINITY, lp, 1.0, 0.0}, x, scale, opts));
    // isolated critical value 2 lambda_p
    consider(ExtendedReal(lp * x - 2.0 * lp));
  } else {
    consider(sup_over_piece({-INFINITY, lp, 0.0, 0.0}, x, scale, opts));
    consider(sup_over_piece({lp, INFINITY, 1.0, -lp}, x, scale, opts));
  }
  if (best.is_pos_inf() && !opts.allow_infinite) {
    throw DomainError("legendre_numeric: supremum diverges at x = " + std::to_string(x));
  }
  return best;
}

namespace {

void require_near_n(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("near-scale quantities need n >= 2");
}

ExtendedReal scaled(double log_value, double speed) {
  return ExtendedReal::from_double(log_value / speed);
}

// Bounds on ln P(L(n) < k) valid for every k >= 0, exact at the ends.
LogBounds below_bounds(std::uint64_t n, std::int64_t k, const BernoulliModel& model) {
  if (k <= 0) return {neg_inf, neg_inf};
  if (static_cast<std::uint64_t>(k) > n) return {0.0, 0.0};
  return tail_bounds(n, static_cast<std::uint64_t>(k), model);
}

// ln P(L(n) >= k) bracket from the bounds on its complement.
Bracket at_least_bracket(std::uint64_t n, std::int64_t k, const BernoulliModel& model,
                         double speed) {
  if (k <= 0) return {ExtendedReal(0.0), ExtendedReal(0.0)};
  if (static_cast<std::uint64_t>(k) > n) return {ExtendedReal::neg_inf(), ExtendedReal::neg_inf()};
  const LogBounds b = tail_bounds_at_least(n, static_cast<std::uint64_t>(k), model);
  return {scaled(b.log_lower, speed), scaled(b.log_upper, speed)};
}

struct IntervalIndices {
  std::int64_t lo;
  std::int64_t hi;
};

IntervalIndices interval_indices(std::uint64_t n, double a, double b, double ell) {
  const double dn = static_cast<double>(n);
  const double va = std::isinf(a) ? a : a * ell;
  const double vb = std::isinf(b) ? b : b * ell;
  // lo may land at n + 1 and hi at -1; both mean an empty event
  const std::int64_t lo = va <= 0.0 ? 0 : va > dn ? static_cast<std::int64_t>(n) + 1
                                                  : ceil_threshold(va);
  const std::int64_t hi = vb < 0.0 ? -1 : vb >= dn ? static_cast<std::int64_t>(n)
                                                   : floor_threshold(vb);
  return {std::min(lo, static_cast<std::int64_t>(n) + 1), hi};
}

}  // namespace

ExtendedReal finite_n_upper_near(std::uint64_t n, double x, const BernoulliModel& model,
                                 const TailOptions& opts) {
  require_near_n(n);
  if (!(x > 0.0)) throw InvalidArgument("finite_n_upper_near: x must be > 0");
  const double ell = nominal_value(n, model);
  const std::int64_t k = ceil_threshold((1.0 + x) * ell);
  if (static_cast<std::uint64_t>(k) > n) {
    if (!opts.allow_infinite) {
      throw DomainError("finite_n_upper_near: (1+x) l(n) exceeds n, event is empty");
    }
    return ExtendedReal::neg_inf();
  }
  return scaled(log_prob_run_at_least(n, static_cast<std::uint64_t>(k), model), ell);
}

double finite_n_lower_near(std::uint64_t n, double x, const BernoulliModel& model) {
  require_near_n(n);
  if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("finite_n_lower_near: x must lie in (0, 1)");
  const double ell = nominal_value(n, model);
  const std::int64_t j = floor_threshold((1.0 - x) * ell);
  if (static_cast<std::uint64_t>(j) >= n) {
    throw DomainError("finite_n_lower_near: P(L(n) <= (1-x) l(n)) = 1");
  }
  const double log_prob = log_prob_no_run(n, static_cast<std::uint64_t>(j) + 1, model);
  if (log_prob == neg_inf || log_prob == 0.0) {
    throw DomainError("finite_n_lower_near: inner probability is 0 or 1 at this n");
  }
  return std::log(-log_prob) / ell;
}

double finite_n_away(std::uint64_t n, double x, const BernoulliModel& model) {
  if (n < 1) throw InvalidArgument("finite_n_away: n must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("finite_n_away: x must lie in [0, 1]");
  const std::int64_t k = ceil_threshold(static_cast<double>(n) * x);
  if (k == 0) return 0.0;
  return log_prob_run_at_least(n, static_cast<std::uint64_t>(k), model) / static_cast<double>(n);
}

ExtendedReal finite_n_interval_near(std::uint64_t n, double a, double b,
                                    const BernoulliModel& model, const TailOptions& opts) {
  require_near_n(n);
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw InvalidArgument("finite_n_interval_near: need a <= b");
  }
  const double ell = nominal_value(n, model);
  const auto [lo, hi] = interval_indices(n, a, b, ell);
  if (lo > hi || hi < 0 || lo > static_cast<std::int64_t>(n)) {
    if (!opts.allow_infinite) throw DomainError("finite_n_interval_near: event is empty");
    return ExtendedReal::neg_inf();
  }
  // P(lo <= L <= hi) = P(L >= lo) - P(L >= hi + 1) = P(L < hi + 1) - P(L < lo)
  const TailPair top = log_tails(n, static_cast<std::uint64_t>(hi) + 1, model);
  const TailPair bottom = log_tails(n, static_cast<std::uint64_t>(lo), model);
  double log_prob;
  if (bottom.log_at_least <= top.log_below) {
    log_prob = numeric::log_diff_exp(bottom.log_at_least, top.log_at_least);
  } else {
    log_prob = numeric::log_diff_exp(top.log_below, bottom.log_below);
  }
  if (log_prob == neg_inf && !opts.allow_infinite) {
    throw DomainError("finite_n_interval_near: event has probability zero");
  }
  return scaled(log_prob, ell);
}

Bracket bracket_upper_near(std::uint64_t n, double x, const BernoulliModel& model) {
  require_near_n(n);
  const double ell = nominal_value(n, model);
  return at_least_bracket(n, ceil_threshold((1.0 + x) * ell), model, ell);
}

Bracket bracket_lower_near(std::uint64_t n, double x, const BernoulliModel& model) {
  require_near_n(n);
  const double ell = nominal_value(n, model);
  const std::int64_t j = floor_threshold((1.0 - x) * ell);
  const LogBounds b = below_bounds(n, j + 1, model);
  // ln(-ln P) is decreasing in P
  return {scaled(std::log(-b.log_upper), ell), scaled(std::log(-b.log_lower), ell)};
}

Bracket bracket_away(std::uint64_t n, double x, const BernoulliModel& model) {
  const std::int64_t k = ceil_threshold(static_cast<double>(n) * x);
  if (k == 0) return {ExtendedReal(0.0), ExtendedReal(0.0)};
  return at_least_bracket(n, k, model, static_cast<double>(n));
}

Bracket bracket_interval_near(std::uint64_t n, double a, double b, const BernoulliModel& model) {
  require_near_n(n);
  const double ell = nominal_value(n, model);
  const auto [lo, hi] = interval_indices(n, a, b, ell);
  if (lo > hi || hi < 0 || lo > static_cast<std::int64_t>(n)) {
    return {ExtendedReal::neg_inf(), ExtendedReal::neg_inf()};
  }
  if (static_cast<std::uint64_t>(hi) >= n) return at_least_bracket(n, lo, model, ell);
  const LogBounds top = below_bounds(n, hi + 1, model);
  if (lo == 0) return {scaled(top.log_lower, ell), scaled(top.log_upper, ell)};
  const LogBounds bottom = below_bounds(n, lo, model);
  return {scaled(numeric::log_diff_exp(top.log_lower, bottom.log_upper), ell),
          scaled(numeric::log_diff_exp(top.log_upper, bottom.log_lower), ell)};
}

double limit_upper_near(double x, const BernoulliModel& model) { return -x * model.lambda_p(); }
double limit_lower_near(double x, const BernoulliModel& model) { return x * model.lambda_p(); }
double limit_away(double x, const BernoulliModel& model) { return -x * model.lambda_p(); }

ExtendedReal limit_interval_near(double a, double b, const BernoulliModel& model) {
  if (b < 1.0) return ExtendedReal::neg_inf();
  return ExtendedReal(-(std::max(a, 1.0) - 1.0) * model.lambda_p());
}

}  // namespace longrun
