#pragma once

#include <functional>
#include <vector>

#include "crflow/mp.hpp"

namespace crflow {

/// Real polynomial sum_k c_k r^{first_degree + k}.
class RealPoly {
 public:
  RealPoly() = default;
  RealPoly(std::vector<Real> coeffs, int first_degree);

  Real operator()(const Real& r) const;
  Real derivative(const Real& r) const;
  bool empty() const { return coeffs_.empty(); }
  int first_degree() const { return first_degree_; }
  const std::vector<Real>& coeffs() const { return coeffs_; }

 private:
  std::vector<Real> coeffs_;
  int first_degree_ = 0;
};

/// One monomial c r^i t^j of a bivariate polynomial.
struct Monomial2 {
  int r_degree = 0;
  int t_degree = 0;
  Real coeff;
};

/// Real polynomial in (r, t), used for the radial surface's Q(|z2|, t).
class BivariatePoly {
 public:
  BivariatePoly() = default;
  /// Throws std::invalid_argument on negative degrees or a constant term
  /// (Q(0,0) = 0 is required).
  explicit BivariatePoly(std::vector<Monomial2> terms);

  Real operator()(const Real& r, const Real& t) const;
  Real d_dr(const Real& r, const Real& t) const;
  Real d_dt(const Real& r, const Real& t) const;
  const std::vector<Monomial2>& terms() const { return terms_; }

 private:
  std::vector<Monomial2> terms_;
};

/// Radial data p(r), q(r) with analytic first derivatives.
///
/// p is either the inverse-power family -c r^{-s} plus an optional
/// polynomial correction, or a caller-supplied (p, p') pair. q is a
/// polynomial with q(0) = 0.
class RadialProfile {
 public:
  using Fn = std::function<Real(const Real&)>;

  /// p(r) = -c r^{-s} + correction(r). Throws std::invalid_argument unless c, s > 0.
  static RadialProfile inverse_power(const Real& c, const Real& s, RealPoly correction = {},
                                     RealPoly q = {});
  /// Escape hatch for profiles outside the closed-form family. The caller
  /// is responsible for e^{p} vanishing to infinite order at 0.
  static RadialProfile callable(Fn p, Fn dp, RealPoly q = {});

  Real p(const Real& r) const;
  Real dp(const Real& r) const;
  Real q(const Real& r) const;
  Real dq(const Real& r) const;
  /// g(r) = e^{p(r)} for r > 0 and g(0) = 0.
  Real g(const Real& r) const;

  bool is_inverse_power() const { return !p_fn_; }
  const Real& c() const { return c_; }
  const Real& s() const { return s_; }
  const RealPoly& p_correction() const { return p_correction_; }
  const RealPoly& q_poly() const { return q_; }

 private:
  RadialProfile() = default;

  Real c_;
  Real s_;
  RealPoly p_correction_;
  Fn p_fn_;
  Fn dp_fn_;
  RealPoly q_;
};

}  // namespace crflow
