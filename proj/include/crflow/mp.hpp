#pragma once

// Runtime-precision real and complex arithmetic on top of MPFR.
//
// Every value owns an mpfr_t. New values (including the results of
// arithmetic) are created at the calling thread's working precision, which
// is set with ScopedPrecision. Worker threads must install their own guard.

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace crflow {

/// Mantissa bits plus the residual tolerance policy derived from them.
struct Precision {
  int bits = 192;

  /// Unit-scale residual tolerance tau(bits) = 2^(8 - bits/2).
  ///
  /// Sits well above the central-difference error floor 2^(-2 bits/3) so the
  /// 10^3 tau budget of finite-difference checks is never rounding-limited.
  double tolerance() const;

  /// Central-difference step 2^(-bits/3).
  double fd_step() const;

  /// Throws std::invalid_argument if bits < 64.
  void validate() const;
};

inline constexpr int kMinBits = 64;
inline constexpr int kDefaultBits = 192;

/// Working precision of the calling thread.
int working_bits();

/// Sets the calling thread's working precision for the guard's lifetime.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int bits);
  explicit ScopedPrecision(Precision p) : ScopedPrecision(p.bits) {}
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  int saved_;
};

class Real {
 public:
  Real();
  Real(double x);  // NOLINT(google-explicit-constructor)
  Real(int x);     // NOLINT(google-explicit-constructor)
  Real(long x);    // NOLINT(google-explicit-constructor)
  /// Parses a decimal string at working precision. Throws on bad syntax.
  static Real from_string(std::string_view s);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }
  int bits() const { return static_cast<int>(mpfr_get_prec(value_)); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real ldexp(const Real& x, long e);
Real pi();
Real max(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

class Complex {
 public:
  Complex() = default;
  Complex(Real re, Real im = Real(0)) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT
  Complex(double re) : re_(re), im_(0) {}  // NOLINT
  Complex(int re) : re_(re), im_(0) {}     // NOLINT

  static Complex i() { return {Real(0), Real(1)}; }
  /// cos(theta) + i sin(theta).
  static Complex polar_unit(const Real& theta);

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re_ * s, a.im_ * s}; }
  friend Complex operator*(const Real& s, const Complex& a) { return {a.re_ * s, a.im_ * s}; }
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re_ / s, a.im_ / s}; }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

inline Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }
Real abs(const Complex& z);
Real norm(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal logarithm.
Complex log(const Complex& z);
Complex pow(const Complex& z, long n);
Complex tan(const Complex& z);
/// Multiplication by i.
inline Complex mul_i(const Complex& z) { return {-z.imag(), z.real()}; }

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace crflow
