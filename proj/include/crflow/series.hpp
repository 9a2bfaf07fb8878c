#pragma once

// Truncated holomorphic series a(z) = sum_{n=1}^N a_n z^n.
//
// The truncated polynomial *is* the model's a(z): identities built on it are
// exact for the polynomial, so residual checks are true zero-target tests.

#include <vector>

#include "crflow/mp.hpp"

namespace crflow {

class HoloSeries {
 public:
  /// coeffs[k] is a_{k+1}. Throws std::invalid_argument if empty or non-finite.
  explicit HoloSeries(std::vector<Complex> coeffs);

  /// a(z) = z.
  static HoloSeries identity();

  int order() const { return static_cast<int>(coeffs_.size()); }
  /// a_n for 1 <= n <= order().
  const Complex& coeff(int n) const { return coeffs_.at(static_cast<size_t>(n - 1)); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const;

 private:
  std::vector<Complex> coeffs_;
};

enum class SeriesKind {
  kDivideByN,        // a_n / n
  kDivideByIN,       // a_n / (i n)
  kShiftDerivative,  // sum a_n z^{n-1} = a(z)/z, re-indexed from degree 1
};

/// Horner evaluation, highest degree first. Throws DomainError
/// ("non-finite argument") for non-finite z.
Complex eval_series(const HoloSeries& s, const Complex& z, Precision prec);
Complex eval_series(const HoloSeries& s, const Complex& z);

/// Coefficient-wise companion series. kShiftDerivative drops a_1 (the
/// constant term of a(z)/z cannot be represented with a_0 forced to zero),
/// so it reproduces a(z)/z exactly only when a_1 = 0; see shifted_quotient.
HoloSeries derived_series(const HoloSeries& s, SeriesKind kind);

/// a(z)/z = sum_{n=1}^N a_n z^{n-1}, including the constant a_1; defined at z = 0.
Complex shifted_quotient(const HoloSeries& s, const Complex& z);

/// I(z2, t) = int_0^t a(z2 e^{i tau}) d tau = sum a_n z2^n (e^{int} - 1)/(in).
Complex arc_integral(const HoloSeries& s, const Complex& z2, const Real& t, Precision prec);
Complex arc_integral(const HoloSeries& s, const Complex& z2, const Real& t);

}  // namespace crflow
