#pragma once

// Test-side reference computations, independent of the library's formulas.

#include <functional>
#include <vector>

#include "crflow/mp.hpp"

namespace oracle {

using crflow::Complex;
using crflow::Real;

/// Romberg integration of f over [a, b]; stops when successive diagonal
/// entries agree to `tol` (absolute).
inline Complex integrate(const std::function<Complex(const Real&)>& f, const Real& a,
                         const Real& b, double tol, int max_levels = 22) {
  if (a == b) return Complex(0);
  const Real width = b - a;
  std::vector<Complex> prev{ldexp(width, -1) * (f(a) + f(b))};
  for (int level = 1; level < max_levels; ++level) {
    const long panels = 1L << level;
    const Real h = width / Real(panels);
    Complex mids(0);
    for (long k = 1; k < panels; k += 2) mids += f(a + Real(k) * h);
    std::vector<Complex> row{Complex(ldexp(prev[0].real(), -1) + h * mids.real(),
                                     ldexp(prev[0].imag(), -1) + h * mids.imag())};
    Real four_pow(1);
    for (int j = 1; j <= level; ++j) {
      four_pow *= Real(4);
      row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (four_pow - Real(1)));
    }
    if (abs(row.back() - prev.back()).to_double() <= tol) return row.back();
    prev = std::move(row);
  }
  return prev.back();
}

/// sum_n c[n-1] z^n by explicit powers.
inline Complex power_sum(const std::vector<Complex>& c, const Complex& z) {
  Complex acc(0);
  for (std::size_t n = 1; n <= c.size(); ++n) acc += c[n - 1] * pow(z, static_cast<long>(n));
  return acc;
}

/// d/dz of a real function of z = x + iy by Richardson-extrapolated central
/// differences in x and y, (f_x - i f_y)/2.
inline Complex wirtinger(const std::function<Real(const Complex&)>& f, const Complex& z,
                         const Real& h) {
  auto partial = [&](const Complex& dir) {
    auto d = [&](const Real& s) { return (f(z + s * dir) - f(z - s * dir)) / ldexp(s, 1); };
    const Real coarse = d(h);
    const Real fine = d(ldexp(h, -1));
    return fine + (fine - coarse) / Real(3);
  };
  const Real fx = partial(Complex(1));
  const Real fy = partial(Complex::i());
  return Complex(ldexp(fx, -1), ldexp(-fy, -1));
}

}  // namespace oracle
