#include "crflow/flow.hpp"

#include <stdexcept>

#include "crflow/errors.hpp"

namespace crflow {

namespace {

// e^w - 1 without cancellation for small w.
Complex expm1(const Complex& w) {
  const Real half_sin = sin(ldexp(w.imag(), -1));
  const Real re = expm1(w.real()) * cos(w.imag()) - ldexp(half_sin * half_sin, 1);
  const Real im = exp(w.real()) * sin(w.imag());
  return {re, im};
}

// Principal log(1 + u) without cancellation for small u.
Complex log1p(const Complex& u) {
  const Real& x = u.real();
  const Real& y = u.imag();
  const Real mod = ldexp(log1p(ldexp(x, 1) + x * x + y * y), -1);
  return {mod, atan2(y, Real(1) + x)};
}

Complex i_times(const Complex& z) { return mul_i(z); }

Point2 flow_step(const FlowMap& f, const Real& t, const Complex& z1, const Complex& z2) {
  const Complex rotated = z2 * Complex::polar_unit(t);
  if (t.is_zero()) return {z1, z2};
  const Complex growth = exp(arc_integral(f.a, z2, t));
  if (f.alpha.is_zero()) return {z1 * growth, rotated};

  const Real& alpha = f.alpha.value();
  // w = 1 + u with u = (e^{-alpha z1} - 1) e^{I}
  const Complex u = expm1(-(alpha * z1)) * growth;
  if (!(Real(1) + u.real() > Real(0))) throw DomainError("log branch");
  return {-(log1p(u) / alpha), rotated};
}

}  // namespace

Real distance(const Point2& a, const Point2& b) {
  return max(abs(a.z1 - b.z1), abs(a.z2 - b.z2));
}

VectorField field_of(const ModelSurface& m) { return {m.a(), m.alpha()}; }

FlowMap flow_of(const ModelSurface& m) { return {m.a(), m.alpha()}; }

Complex eval_L(const Alpha& alpha, const Complex& z1) {
  if (alpha.is_zero()) return z1;
  return expm1(alpha.value() * z1) / alpha.value();
}

Point2 eval_field(const VectorField& v, const Complex& z1, const Complex& z2) {
  return {eval_L(v.alpha, z1) * eval_series(v.a, z2), i_times(z2)};
}

Real max_flow_step() { return ldexp(pi(), 1); }

Point2 flow_closed(const FlowMap& f, const Real& t, const Complex& z1, const Complex& z2) {
  if (!t.is_finite() || !z1.is_finite() || !z2.is_finite()) {
    throw DomainError("non-finite argument");
  }
  const Real step = max_flow_step();
  if (abs(t) <= step) return flow_step(f, t, z1, z2);

  // phi_t = phi_{t - k step} o phi_step o ... o phi_step
  Point2 p{z1, z2};
  Real remaining = t;
  const Real signed_step = t.sign() > 0 ? step : -step;
  while (abs(remaining) > step) {
    p = flow_step(f, signed_step, p.z1, p.z2);
    remaining -= signed_step;
  }
  return flow_step(f, remaining, p.z1, p.z2);
}

Point2 flow_ode(const FlowMap& f, const Real& t, const Complex& z1, const Complex& z2, int steps) {
  if (steps < 1) throw std::invalid_argument("flow_ode needs steps >= 1");
  if (t.is_zero()) return {z1, z2};
  const VectorField v{f.a, f.alpha};
  const Real h = t / Real(steps);
  const Real half_h = ldexp(h, -1);
  const Real sixth_h = h / Real(6);

  Complex y1 = z1;
  Complex y2 = z2;
  for (int s = 0; s < steps; ++s) {
    const Point2 k1 = eval_field(v, y1, y2);
    const Point2 k2 = eval_field(v, y1 + half_h * k1.z1, y2 + half_h * k1.z2);
    const Point2 k3 = eval_field(v, y1 + half_h * k2.z1, y2 + half_h * k2.z2);
    const Point2 k4 = eval_field(v, y1 + h * k3.z1, y2 + h * k3.z2);
    y1 += sixth_h * (k1.z1 + Real(2) * k2.z1 + Real(2) * k3.z1 + k4.z1);
    y2 += sixth_h * (k1.z2 + Real(2) * k2.z2 + Real(2) * k3.z2 + k4.z2);
    if (!y1.is_finite() || !y2.is_finite()) throw DomainError("overflow");
  }
  return {y1, y2};
}

Point2 rotation_flow(const Real& t, const Complex& z1, const Complex& z2) {
  if (t.is_zero()) return {z1, z2};
  return {z1, z2 * Complex::polar_unit(t)};
}

Real generator_check(const FlowMap& f, const VectorField& v, const Complex& z1,
                     const Complex& z2, const Real& h) {
  const Point2 forward = flow_closed(f, h, z1, z2);
  const Point2 backward = flow_closed(f, -h, z1, z2);
  const Real two_h = ldexp(h, 1);
  const Point2 field = eval_field(v, z1, z2);
  const Point2 quotient{(forward.z1 - backward.z1) / two_h, (forward.z2 - backward.z2) / two_h};
  return distance(quotient, field);
}

}  // namespace crflow
