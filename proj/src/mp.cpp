#include "crflow/mp.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crflow {

namespace {

thread_local int g_working_bits = kDefaultBits;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

}  // namespace

double Precision::tolerance() const { return std::ldexp(1.0, 8 - bits / 2); }

double Precision::fd_step() const { return std::ldexp(1.0, -bits / 3); }

void Precision::validate() const {
  if (bits < kMinBits) {
    throw std::invalid_argument("precision must be at least 64 bits, got " + std::to_string(bits));
  }
}

int working_bits() { return g_working_bits; }

ScopedPrecision::ScopedPrecision(int bits) : saved_(g_working_bits) {
  Precision{bits}.validate();
  g_working_bits = bits;
}

ScopedPrecision::~ScopedPrecision() { g_working_bits = saved_; }

// ---------------------------------------------------------------------------
// Real

Real::Real() {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double x) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_d(value_, x, kRnd);
}

Real::Real(int x) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_si(value_, x, kRnd);
}

Real::Real(long x) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_si(value_, x, kRnd);
}

Real Real::from_string(std::string_view s) {
  Real r;
  const std::string buf(s);
  char* end = nullptr;
  mpfr_strtofr(r.value_, buf.c_str(), &end, 10, kRnd);
  if (buf.empty() || end == buf.c_str() || *end != '\0') {
    throw std::invalid_argument("not a number: '" + buf + "'");
  }
  return r;
}

Real::Real(const Real& o) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set(value_, o.value_, kRnd);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(value_, mpfr_get_prec(o.value_));
  mpfr_swap(value_, o.value_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    if (mpfr_get_prec(value_) != g_working_bits) mpfr_set_prec(value_, g_working_bits);
    mpfr_set(value_, o.value_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(value_, o.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  return buf.data();
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(value_, value_, o.value_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(value_, value_, o.value_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(value_, value_, o.value_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(value_, value_, o.value_, kRnd);
  return *this;
}

Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.value_, a.value_, kRnd);
  return r;
}
Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.value_, a.value_, b.value_, kRnd);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.value_, a.value_, b.value_, kRnd);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r;
  mpfr_mul(r.value_, a.value_, b.value_, kRnd);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r;
  mpfr_div(r.value_, a.value_, b.value_, kRnd);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

namespace {

template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
Real unary(const Real& x) {
  Real r;
  Fn(r.raw(), x.raw(), kRnd);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary<mpfr_abs>(x); }
Real sqrt(const Real& x) { return unary<mpfr_sqrt>(x); }
Real exp(const Real& x) { return unary<mpfr_exp>(x); }
Real expm1(const Real& x) { return unary<mpfr_expm1>(x); }
Real log(const Real& x) { return unary<mpfr_log>(x); }
Real log1p(const Real& x) { return unary<mpfr_log1p>(x); }
Real sin(const Real& x) { return unary<mpfr_sin>(x); }
Real cos(const Real& x) { return unary<mpfr_cos>(x); }
Real tan(const Real& x) { return unary<mpfr_tan>(x); }

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), kRnd);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), kRnd);
  return r;
}

Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.raw(), x.raw(), n, kRnd);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.raw(), x.raw(), e, kRnd);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.raw(), kRnd);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

// ---------------------------------------------------------------------------
// Complex

Complex Complex::polar_unit(const Real& theta) {
  Real s;
  Real c;
  mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), kRnd);
  return {std::move(c), std::move(s)};
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }

Complex& Complex::operator/=(const Complex& o) { return *this = *this / o; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

Complex operator/(const Complex& a, const Complex& b) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(b.re_) >= abs(b.im_)) {
    const Real ratio = b.im_ / b.re_;
    const Real denom = b.re_ + b.im_ * ratio;
    return {(a.re_ + a.im_ * ratio) / denom, (a.im_ - a.re_ * ratio) / denom};
  }
  const Real ratio = b.re_ / b.im_;
  const Real denom = b.re_ * ratio + b.im_;
  return {(a.re_ * ratio + a.im_) / denom, (a.im_ * ratio - a.re_) / denom};
}

Real abs(const Complex& z) { return hypot(z.real(), z.imag()); }

Real norm(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

Real arg(const Complex& z) { return atan2(z.imag(), z.real()); }

Complex exp(const Complex& z) { return exp(z.real()) * Complex::polar_unit(z.imag()); }

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex result(1);
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Complex tan(const Complex& z) {
  // tan(x+iy) = (sin 2x + i sinh 2y) / (cos 2x + cosh 2y)
  const Real two_x = ldexp(z.real(), 1);
  const Real two_y = ldexp(z.imag(), 1);
  Real sh;
  Real ch;
  mpfr_sinh_cosh(sh.raw(), ch.raw(), two_y.raw(), kRnd);
  const Real denom = cos(two_x) + ch;
  return {sin(two_x) / denom, sh / denom};
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.real() << ", " << z.imag() << ')';
}

}  // namespace crflow
