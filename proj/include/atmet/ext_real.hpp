#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <charconv>
#include <string>

#include "atmet/error.hpp"

namespace atmet {

/// Non-negative extended real: a finite value >= 0 or +infinity. Infinity is
/// a separate state, not a floating-point sentinel.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  ExtReal(double v) {  // NOLINT(google-explicit-constructor): numeric literal convenience
    if (std::isnan(v) || v < 0) throw Error(ErrorKind::ValueParseError, "extended reals must be >= 0");
    if (std::isinf(v)) {
      infinite_ = true;
    } else {
      value_ = v;
    }
  }

  static ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  /// Finite value; +inf as a double for infinite values.
  double value() const { return infinite_ ? HUGE_VAL : value_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ + b.value_);
  }

  // 0 * inf = 0.
  friend ExtReal operator*(ExtReal a, ExtReal b) {
    if ((!a.infinite_ && a.value_ == 0) || (!b.infinite_ && b.value_ == 0)) return ExtReal(0.0);
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ * b.value_);
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend ExtReal min(ExtReal a, ExtReal b) { return a <= b ? a : b; }
  friend ExtReal max(ExtReal a, ExtReal b) { return a >= b ? a : b; }

  /// Shortest decimal that round-trips, or `inf`.
  std::string to_string() const {
    if (infinite_) return "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value_);
    return std::string(buf, res.ptr);
  }

 private:
  double value_ = 0;
  bool infinite_ = false;
};

/// |a - b| <= tol, with infinities equal only to each other.
inline bool near(const ExtReal& a, const ExtReal& b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return std::abs(a.value() - b.value()) <= tol;
}

}  // namespace atmet
