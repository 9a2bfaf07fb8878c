#include "crflow/series.hpp"

#include <stdexcept>
#include <utility>

#include "crflow/errors.hpp"

namespace crflow {

HoloSeries::HoloSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
  for (const auto& c : coeffs_) {
    if (!c.is_finite()) throw std::invalid_argument("series coefficient is not finite");
  }
}

HoloSeries HoloSeries::identity() { return HoloSeries({Complex(1)}); }

bool HoloSeries::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Complex eval_series(const HoloSeries& s, const Complex& z, Precision prec) {
  ScopedPrecision guard(prec);
  return eval_series(s, z);
}

Complex eval_series(const HoloSeries& s, const Complex& z) {
  if (!z.is_finite()) throw DomainError("non-finite argument");
  // z * (a_1 + z (a_2 + ... + z a_N))
  const auto& c = s.coeffs();
  Complex acc = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc * z;
}

HoloSeries derived_series(const HoloSeries& s, SeriesKind kind) {
  const auto& c = s.coeffs();
  std::vector<Complex> out;
  switch (kind) {
    case SeriesKind::kDivideByN:
      for (size_t k = 0; k < c.size(); ++k) out.push_back(c[k] / Real(static_cast<long>(k + 1)));
      break;
    case SeriesKind::kDivideByIN:
      // a / (i n) = -i a / n
      for (size_t k = 0; k < c.size(); ++k) {
        out.push_back(mul_i(-c[k]) / Real(static_cast<long>(k + 1)));
      }
      break;
    case SeriesKind::kShiftDerivative:
      for (size_t k = 1; k < c.size(); ++k) out.push_back(c[k]);
      if (out.empty()) out.emplace_back(0);
      break;
  }
  return HoloSeries(std::move(out));
}

Complex shifted_quotient(const HoloSeries& s, const Complex& z) {
  const auto& c = s.coeffs();
  Complex acc = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

Complex arc_integral(const HoloSeries& s, const Complex& z2, const Real& t, Precision prec) {
  ScopedPrecision guard(prec);
  return arc_integral(s, z2, t);
}

Complex arc_integral(const HoloSeries& s, const Complex& z2, const Real& t) {
  if (!z2.is_finite() || !t.is_finite()) throw DomainError("non-finite argument");
  Complex sum(0);
  if (t.is_zero()) return sum;
  Complex z_pow(1);
  for (int n = 1; n <= s.order(); ++n) {
    z_pow *= z2;
    const Real n_real(n);
    // (e^{int} - 1)/(in) = (sin nt)/n + i (2 sin^2(nt/2))/n
    const Real nt = n_real * t;
    const Real half_sin = sin(ldexp(nt, -1));
    const Complex kernel(sin(nt) / n_real, ldexp(half_sin * half_sin, 1) / n_real);
    sum += s.coeff(n) * z_pow * kernel;
  }
  return sum;
}

}  // namespace crflow
