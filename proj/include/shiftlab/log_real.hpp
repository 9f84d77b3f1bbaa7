#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace shiftlab {

/// Signed real stored as sign * 2^l2. Orbit coefficients of the constructed
/// vectors reach 2^-200000, far below the double range.
class LogReal {
 public:
  LogReal() = default;
  LogReal(double v)  // NOLINT: implicit from double on purpose
      : sign_(v > 0 ? 1 : (v < 0 ? -1 : 0)), l2_(v == 0 ? 0.0 : std::log2(std::fabs(v))) {}

  static LogReal from_log2(int sign, double l2) {
    LogReal r;
    r.sign_ = sign == 0 ? 0 : (sign > 0 ? 1 : -1);
    r.l2_ = r.sign_ == 0 ? 0.0 : l2;
    return r;
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  /// log2 |x|; -inf for zero.
  double log2_abs() const { return sign_ == 0 ? -std::numeric_limits<double>::infinity() : l2_; }
  double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp2(l2_); }

  LogReal operator-() const { return from_log2(-sign_, l2_); }
  LogReal abs() const { return from_log2(sign_ != 0, l2_); }

  friend LogReal operator*(LogReal a, LogReal b) { return from_log2(a.sign_ * b.sign_, a.l2_ + b.l2_); }
  friend LogReal operator/(LogReal a, LogReal b) { return from_log2(a.sign_ * b.sign_, a.l2_ - b.l2_); }

  friend LogReal operator+(LogReal a, LogReal b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.l2_ < b.l2_) std::swap(a, b);
    const double r = std::exp2(b.l2_ - a.l2_);  // <= 1
    if (a.sign_ == b.sign_) return from_log2(a.sign_, a.l2_ + std::log2(1.0 + r));
    if (r == 1.0) return LogReal();
    return from_log2(a.sign_, a.l2_ + std::log2(1.0 - r));
  }
  friend LogReal operator-(LogReal a, LogReal b) { return a + (-b); }

  /// Multiply by 2^k without leaving the log domain.
  LogReal scaled_log2(double k) const { return from_log2(sign_, l2_ + k); }

  friend bool abs_less(LogReal a, LogReal b) { return a.log2_abs() < b.log2_abs(); }
  friend bool operator==(LogReal a, LogReal b) { return a.sign_ == b.sign_ && (a.sign_ == 0 || a.l2_ == b.l2_); }

 private:
  int sign_ = 0;
  double l2_ = 0.0;
};

/// Uniform access to double and LogReal in templated kernels.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double log2_abs(double x) { return x == 0 ? -std::numeric_limits<double>::infinity() : std::log2(std::fabs(x)); }
  static bool is_zero(double x) { return x == 0.0; }
  static double scale_log2(double x, double k) { return x * std::exp2(k); }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<LogReal> {
  static double log2_abs(LogReal x) { return x.log2_abs(); }
  static bool is_zero(LogReal x) { return x.is_zero(); }
  static LogReal scale_log2(LogReal x, double k) { return x.scaled_log2(k); }
  static double to_double(LogReal x) { return x.to_double(); }
};

}  // namespace shiftlab
