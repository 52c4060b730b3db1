#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "longrun/errors.hpp"

namespace longrun {

/// A real number or one of the two infinities. Rate functions and cumulants
/// take the value +inf off their effective domains; this type keeps that
/// state explicit instead of folding it into a float.
class ExtendedReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  constexpr ExtendedReal() = default;

  /// Finite value. NaN and IEEE infinities are rejected: use the named
  /// constructors for the infinite states.
  explicit ExtendedReal(double v) : value_(v) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("ExtendedReal: finite value expected");
    }
  }

  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::pos_inf); }
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::neg_inf); }

  /// Maps IEEE +-inf onto the infinite states; NaN is still an error.
  static ExtendedReal from_double(double v) {
    if (v == INFINITY) return pos_inf();
    if (v == -INFINITY) return neg_inf();
    return ExtendedReal(v);
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  double value() const {
    if (!is_finite()) throw DomainError("ExtendedReal: value is infinite");
    return value_;
  }

  /// IEEE view, for arithmetic where infinities propagate correctly.
  constexpr double to_double() const {
    switch (kind_) {
      case Kind::pos_inf: return INFINITY;
      case Kind::neg_inf: return -INFINITY;
      default: return value_;
    }
  }

  std::string to_string() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    return a.to_double() <=> b.to_double();
  }

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

}  // namespace longrun
