#include "crflow/profile.hpp"

#include <stdexcept>
#include <utility>

namespace crflow {

RealPoly::RealPoly(std::vector<Real> coeffs, int first_degree)
    : coeffs_(std::move(coeffs)), first_degree_(first_degree) {
  if (first_degree < 0) throw std::invalid_argument("negative polynomial degree");
}

Real RealPoly::operator()(const Real& r) const {
  if (coeffs_.empty()) return Real(0);
  Real acc = coeffs_.back();
  for (size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * r + coeffs_[k];
  return first_degree_ == 0 ? acc : acc * pow(r, static_cast<long>(first_degree_));
}

Real RealPoly::derivative(const Real& r) const {
  Real acc(0);
  for (size_t k = coeffs_.size(); k-- > 0;) {
    const long degree = first_degree_ + static_cast<long>(k);
    if (degree == 0) continue;
    acc += Real(degree) * coeffs_[k] * pow(r, degree - 1);
  }
  return acc;
}

BivariatePoly::BivariatePoly(std::vector<Monomial2> terms) : terms_(std::move(terms)) {
  for (const auto& m : terms_) {
    if (m.r_degree < 0 || m.t_degree < 0) throw std::invalid_argument("negative monomial degree");
    if (m.r_degree == 0 && m.t_degree == 0 && !m.coeff.is_zero()) {
      throw std::invalid_argument("Q must vanish at (0,0): constant term not allowed");
    }
  }
}

Real BivariatePoly::operator()(const Real& r, const Real& t) const {
  Real acc(0);
  for (const auto& m : terms_) acc += m.coeff * pow(r, long{m.r_degree}) * pow(t, long{m.t_degree});
  return acc;
}

Real BivariatePoly::d_dr(const Real& r, const Real& t) const {
  Real acc(0);
  for (const auto& m : terms_) {
    if (m.r_degree == 0) continue;
    acc += Real(m.r_degree) * m.coeff * pow(r, long{m.r_degree - 1}) * pow(t, long{m.t_degree});
  }
  return acc;
}

Real BivariatePoly::d_dt(const Real& r, const Real& t) const {
  Real acc(0);
  for (const auto& m : terms_) {
    if (m.t_degree == 0) continue;
    acc += Real(m.t_degree) * m.coeff * pow(r, long{m.r_degree}) * pow(t, long{m.t_degree - 1});
  }
  return acc;
}

RadialProfile RadialProfile::inverse_power(const Real& c, const Real& s, RealPoly correction,
                                           RealPoly q) {
  if (!(c > Real(0)) || !(s > Real(0))) {
    throw std::invalid_argument("inverse_power profile needs c > 0 and s > 0");
  }
  if (!q.empty() && q.first_degree() < 1) {
    throw std::invalid_argument("q must have zero constant term");
  }
  RadialProfile out;
  out.c_ = c;
  out.s_ = s;
  out.p_correction_ = std::move(correction);
  out.q_ = std::move(q);
  return out;
}

RadialProfile RadialProfile::callable(Fn p, Fn dp, RealPoly q) {
  if (!p || !dp) throw std::invalid_argument("callable profile needs both p and p'");
  if (!q.empty() && q.first_degree() < 1) {
    throw std::invalid_argument("q must have zero constant term");
  }
  RadialProfile out;
  out.p_fn_ = std::move(p);
  out.dp_fn_ = std::move(dp);
  out.q_ = std::move(q);
  return out;
}

Real RadialProfile::p(const Real& r) const {
  if (p_fn_) return p_fn_(r);
  return -c_ * pow(r, -s_) + p_correction_(r);
}

Real RadialProfile::dp(const Real& r) const {
  if (dp_fn_) return dp_fn_(r);
  // d/dr (-c r^{-s}) = c s r^{-s-1}
  return c_ * s_ * pow(r, -s_ - Real(1)) + p_correction_.derivative(r);
}

Real RadialProfile::q(const Real& r) const { return q_(r); }

Real RadialProfile::dq(const Real& r) const { return q_.derivative(r); }

Real RadialProfile::g(const Real& r) const {
  if (r.is_zero()) return Real(0);
  return exp(p(r));
}

}  // namespace crflow
