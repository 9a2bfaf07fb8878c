#include "crflow/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "crflow/errors.hpp"
#include "crflow/kernels.hpp"

namespace crflow {

Alpha Alpha::nonzero(const Real& value) {
  if (value.is_zero() || !value.is_finite()) {
    throw std::invalid_argument("nonzero alpha must be finite and != 0");
  }
  Alpha a;
  a.zero_ = false;
  a.value_ = value;
  return a;
}

Alpha Alpha::from_value(const Real& value) { return value.is_zero() ? zero() : nonzero(value); }

namespace {

Real abs_z(const Complex& z) { return abs(z); }

// --- unchecked field formulas -------------------------------------------

Real raw_R(const ModelSurface& m, const Complex& z2) {
  return m.profile().q(abs_z(z2)) - eval_series(m.series_over_n(), z2).real();
}

Real raw_P1(const ModelSurface& m, const Complex& z2) {
  if (z2.is_zero()) return Real(0);
  const Real r = abs_z(z2);
  const Real exponent =
      m.profile().p(r) + eval_series(m.series_over_in(), z2).real() - log(abs(cos(raw_R(m, z2))));
  return exp(exponent);
}

Real raw_P(const ModelSurface& m, const Complex& z2) {
  const Real p1 = raw_P1(m, z2);
  if (m.alpha().is_zero()) return p1;
  const Real& alpha = m.alpha().value();
  return log1p(alpha * p1) / alpha;
}

Real raw_F(const ModelSurface& m, const Complex& z2, const Real& t) {
  if (t.is_zero()) return Real(0);
  const Real tan_r = tan(raw_R(m, z2));
  if (m.alpha().is_zero()) return tan_r * t;
  const Real& alpha = m.alpha().value();
  // cos(R + at)/cos(R) - 1 = -2 sin^2(at/2) - tan(R) sin(at)
  const Real at = alpha * t;
  const Real half = sin(ldexp(at, -1));
  const Real x = -ldexp(half * half, 1) - tan_r * sin(at);
  const Real ratio = Real(1) + x;
  const Real log_abs = ratio > Real(0) ? log1p(x) : log(-ratio);
  return -log_abs / alpha;
}

Real raw_F_t(const ModelSurface& m, const Complex& z2, const Real& t) {
  const Real r_val = raw_R(m, z2);
  if (m.alpha().is_zero()) return tan(r_val);
  return tan(r_val + m.alpha().value() * t);
}

Real raw_field(const ModelSurface& m, Field f, const Complex& z2, const Real& t) {
  switch (f) {
    case Field::kR:
      return raw_R(m, z2);
    case Field::kP1:
      return raw_P1(m, z2);
    case Field::kP:
      return raw_P(m, z2);
    case Field::kQ0:
      return tan(raw_R(m, z2));
    case Field::kF:
      return raw_F(m, z2, t);
  }
  throw std::logic_error("unknown field");
}

// --- domain checks ------------------------------------------------------

void require_finite(const Complex& z) {
  if (!z.is_finite()) throw DomainError("non-finite argument");
}

void require_z2(const ModelSurface& m, const Complex& z2) {
  require_finite(z2);
  if (abs_z(z2) > m.eps0()) throw DomainError("outside eps0");
}

void require_t(const ModelSurface& m, const Real& t) {
  if (!t.is_finite()) throw DomainError("non-finite argument");
  if (abs(t) > m.delta0()) throw DomainError("outside delta0");
}

void require_cos(const ModelSurface& m, const Real& angle) {
  if (abs(cos(angle)) < Real(m.guards().cos_guard)) throw DomainError("cosine guard");
}

void require_positivity(const ModelSurface& m, const Real& p1) {
  if (m.alpha().is_zero()) return;
  if (Real(1) + m.alpha().value() * p1 < Real(m.guards().pos_guard)) {
    throw DomainError("positivity guard");
  }
}

// R at a checked z2, with the cos(R) guard applied.
Real guarded_R(const ModelSurface& m, const Complex& z2) {
  require_z2(m, z2);
  Real r_val = raw_R(m, z2);
  require_cos(m, r_val);
  return r_val;
}

void require_t_guards(const ModelSurface& m, const Complex& z2, const Real& t) {
  require_t(m, t);
  const Real r_val = guarded_R(m, z2);
  if (!m.alpha().is_zero()) require_cos(m, r_val + m.alpha().value() * t);
}

// --- guard validation for create() ----------------------------------------

std::vector<Complex> guard_probe_points(const Real& eps0, int boundary_samples) {
  std::vector<Complex> pts;
  const Real two_pi = ldexp(pi(), 1);
  auto ring = [&](const Real& radius, int count) {
    for (int k = 0; k < count; ++k) {
      const Real theta = two_pi * Real(k) / Real(count);
      pts.push_back(radius * Complex::polar_unit(theta));
    }
  };
  ring(eps0, boundary_samples);
  const int inner = std::max(8, boundary_samples / 10);
  for (int frac = 3; frac >= 1; --frac) ring(eps0 * Real(frac) / Real(4), inner);
  return pts;
}

bool z2_guards_hold(const ModelSurface& m, const std::vector<Complex>& pts) {
  const Real cos_guard(m.guards().cos_guard);
  for (const auto& z2 : pts) {
    const Real r_val = raw_R(m, z2);
    if (!r_val.is_finite() || abs(cos(r_val)) < cos_guard) return false;
    if (!m.alpha().is_zero()) {
      const Real p1 = raw_P1(m, z2);
      if (!p1.is_finite()) return false;
      if (Real(1) + m.alpha().value() * p1 < Real(m.guards().pos_guard)) return false;
    }
  }
  return true;
}

bool t_guards_hold(const ModelSurface& m, const std::vector<Complex>& pts) {
  if (m.alpha().is_zero()) return true;
  const Real cos_guard(m.guards().cos_guard);
  const Real half = ldexp(m.delta0(), -1);
  const Real ts[] = {m.delta0(), -m.delta0(), half, -half};
  for (const auto& z2 : pts) {
    const Real r_val = raw_R(m, z2);
    for (const auto& t : ts) {
      if (abs(cos(r_val + m.alpha().value() * t)) < cos_guard) return false;
    }
  }
  return true;
}

}  // namespace

ModelSurface::ModelSurface(HoloSeries a, Alpha alpha, RadialProfile profile, Precision prec,
                           Guards guards)
    : a_(std::move(a)),
      alpha_(std::move(alpha)),
      profile_(std::move(profile)),
      over_n_(derived_series(a_, SeriesKind::kDivideByN)),
      over_in_(derived_series(a_, SeriesKind::kDivideByIN)),
      prec_(prec),
      guards_(guards) {}

ModelSurface ModelSurface::create(HoloSeries a, Alpha alpha, RadialProfile profile,
                                  const Real& eps0, const Real& delta0, Precision prec,
                                  Guards guards, ShrinkOptions shrink) {
  prec.validate();
  ScopedPrecision scope(prec);
  if (!(eps0 > Real(0)) || !(delta0 > Real(0))) {
    throw std::invalid_argument("eps0 and delta0 must be positive");
  }
  ModelSurface m(std::move(a), std::move(alpha), std::move(profile), prec, guards);
  m.requested_eps0_ = eps0;
  m.requested_delta0_ = delta0;
  m.eps0_ = eps0;
  m.delta0_ = delta0;
  const Real factor(shrink.shrink_factor);

  int shrinks = 0;
  while (!z2_guards_hold(m, guard_probe_points(m.eps0_, shrink.boundary_samples))) {
    if (++shrinks > shrink.max_shrinks) throw ConfigError("guards fail for every tried eps0");
    m.eps0_ *= factor;
  }
  const auto pts = guard_probe_points(m.eps0_, shrink.boundary_samples);
  shrinks = 0;
  while (!t_guards_hold(m, pts)) {
    if (++shrinks > shrink.max_shrinks) throw ConfigError("guards fail for every tried delta0");
    m.delta0_ *= factor;
  }
  return m;
}

Real eval_R(const ModelSurface& m, const Complex& z2) {
  ScopedPrecision scope(m.precision());
  require_z2(m, z2);
  return raw_R(m, z2);
}

Real eval_Q0(const ModelSurface& m, const Complex& z2) {
  ScopedPrecision scope(m.precision());
  return tan(guarded_R(m, z2));
}

Real eval_P1(const ModelSurface& m, const Complex& z2) {
  ScopedPrecision scope(m.precision());
  guarded_R(m, z2);
  return raw_P1(m, z2);
}

Real eval_P(const ModelSurface& m, const Complex& z2) {
  ScopedPrecision scope(m.precision());
  guarded_R(m, z2);
  const Real p1 = raw_P1(m, z2);
  require_positivity(m, p1);
  if (m.alpha().is_zero()) return p1;
  return log1p(m.alpha().value() * p1) / m.alpha().value();
}

Real eval_F(const ModelSurface& m, const Complex& z2, const Real& t) {
  ScopedPrecision scope(m.precision());
  require_t_guards(m, z2, t);
  return raw_F(m, z2, t);
}

Real eval_F_t(const ModelSurface& m, const Complex& z2, const Real& t) {
  ScopedPrecision scope(m.precision());
  require_t_guards(m, z2, t);
  return raw_F_t(m, z2, t);
}

Real eval_Q_from_F(const ModelSurface& m, const Complex& z2, const Real& t) {
  ScopedPrecision scope(m.precision());
  require_t_guards(m, z2, t);
  if (t.is_zero()) return tan(raw_R(m, z2));
  return raw_F(m, z2, t) / t;
}

Real eval_rho(const ModelSurface& m, const Complex& z1, const Complex& z2) {
  ScopedPrecision scope(m.precision());
  require_finite(z1);
  const Real& t = z1.imag();
  require_t_guards(m, z2, t);
  const Real p1 = raw_P1(m, z2);
  require_positivity(m, p1);
  return z1.real() + raw_P(m, z2) + raw_F(m, z2, t);
}

const char* field_name(Field f) {
  switch (f) {
    case Field::kR:
      return "R";
    case Field::kP1:
      return "P1";
    case Field::kP:
      return "P";
    case Field::kQ0:
      return "Q0";
    case Field::kF:
      return "F";
  }
  return "?";
}

Complex wirtinger(const ModelSurface& m, Field field, const Complex& z2, const Real& t,
                  DerivMethod method) {
  ScopedPrecision scope(m.precision());
  if (field == Field::kF) {
    require_t_guards(m, z2, t);
  } else {
    guarded_R(m, z2);
  }

  if (method == DerivMethod::kFiniteDifference) {
    const Real h(m.precision().fd_step());
    const Real two_h = ldexp(h, 1);
    const Complex ih(Real(0), h);
    const Real fx = (raw_field(m, field, z2 + Complex(h), t) -
                     raw_field(m, field, z2 - Complex(h), t)) / two_h;
    const Real fy = (raw_field(m, field, z2 + ih, t) - raw_field(m, field, z2 - ih, t)) / two_h;
    return Complex(ldexp(fx, -1), ldexp(-fy, -1));
  }

  if (z2.is_zero()) throw DomainError("derivative singular at origin");
  const Real r = abs_z(z2);
  // d|z|/dz = conj(z)/(2|z|); d(Re h)/dz = h'/2 for holomorphic h.
  const Complex dr = conj(z2) / ldexp(r, 1);
  const Complex a_over_z = shifted_quotient(m.a(), z2);
  const Complex r_z = m.profile().dq(r) * dr - ldexp(Real(1), -1) * a_over_z;
  if (field == Field::kR) return r_z;

  const Real r_val = raw_R(m, z2);
  const Real tan_r = tan(r_val);
  const Real sec2 = Real(1) + tan_r * tan_r;
  if (field == Field::kQ0) return sec2 * r_z;

  if (field == Field::kF) {
    if (m.alpha().is_zero()) return (t * sec2) * r_z;
    // (tan(R + at) - tan R)/a = sin(at) / (a cos(R + at) cos R)
    const Real& alpha = m.alpha().value();
    const Real at = alpha * t;
    const Real coeff = sin(at) / (alpha * cos(r_val + at) * cos(r_val));
    return coeff * r_z;
  }

  // P1 = exp(p(r) + Re B - log|cos R|), B' = a/(iz).
  const Real p1 = raw_P1(m, z2);
  const Complex b_half = ldexp(Real(1), -1) * (a_over_z / Complex::i());
  const Complex log_p1_z = m.profile().dp(r) * dr + b_half + tan_r * r_z;
  const Complex p1_z = p1 * log_p1_z;
  if (field == Field::kP1 || m.alpha().is_zero()) return p1_z;
  return p1_z / (Real(1) + m.alpha().value() * p1);
}

Complex rho_z1(const ModelSurface& m, const Complex& z1, const Complex& z2) {
  ScopedPrecision scope(m.precision());
  const Real f_t = eval_F_t(m, z2, z1.imag());
  // 1/2 + F_t/(2i) = 1/2 - i F_t/2
  return Complex(ldexp(Real(1), -1), ldexp(-f_t, -1));
}

Complex rho_z2(const ModelSurface& m, const Complex& z1, const Complex& z2, DerivMethod method) {
  ScopedPrecision scope(m.precision());
  return wirtinger(m, Field::kP, z2, z1.imag(), method) +
         wirtinger(m, Field::kF, z2, z1.imag(), method);
}

// ---------------------------------------------------------------------------
// Radial surface

RadialSurface::RadialSurface(RadialProfile profile, BivariatePoly q_fn, const Real& eps0,
                             const Real& delta0, Precision prec)
    : profile_(std::move(profile)), q_fn_(std::move(q_fn)), prec_(prec) {
  prec.validate();
  ScopedPrecision scope(prec);
  if (!(eps0 > Real(0)) || !(delta0 > Real(0))) {
    throw std::invalid_argument("eps0 and delta0 must be positive");
  }
  eps0_ = eps0;
  delta0_ = delta0;
}

namespace {

void require_radial(const RadialSurface& rs, const Complex& z1, const Complex& z2) {
  require_finite(z1);
  require_finite(z2);
  if (abs_z(z2) > rs.eps0()) throw DomainError("outside eps0");
  if (abs(z1.imag()) > rs.delta0()) throw DomainError("outside delta0");
}

}  // namespace

Real eval_radial_P(const RadialSurface& rs, const Complex& z2) {
  ScopedPrecision scope(rs.precision());
  require_finite(z2);
  if (abs_z(z2) > rs.eps0()) throw DomainError("outside eps0");
  return rs.profile().g(abs_z(z2));
}

Real eval_radial_rho(const RadialSurface& rs, const Complex& z1, const Complex& z2) {
  ScopedPrecision scope(rs.precision());
  require_radial(rs, z1, z2);
  const Real r = abs_z(z2);
  const Real& t = z1.imag();
  return z1.real() + rs.profile().g(r) + t * rs.q_fn()(r, t);
}

Complex radial_rho_z1(const RadialSurface& rs, const Complex& z1, const Complex& z2) {
  ScopedPrecision scope(rs.precision());
  require_radial(rs, z1, z2);
  const Real r = abs_z(z2);
  const Real& t = z1.imag();
  const Real d_t = rs.q_fn()(r, t) + t * rs.q_fn().d_dt(r, t);
  return Complex(ldexp(Real(1), -1), ldexp(-d_t, -1));
}

Complex radial_rho_z2(const RadialSurface& rs, const Complex& z1, const Complex& z2) {
  ScopedPrecision scope(rs.precision());
  require_radial(rs, z1, z2);
  if (z2.is_zero()) throw DomainError("derivative singular at origin");
  const Real r = abs_z(z2);
  const Real& t = z1.imag();
  const Real g = rs.profile().g(r);
  const Real d_r = g * rs.profile().dp(r) + t * rs.q_fn().d_dr(r, t);
  return (d_r / ldexp(r, 1)) * conj(z2);
}

// ---------------------------------------------------------------------------
// Sampling

double point_tolerance(Precision prec) { return std::ldexp(1.0, 16 - 3 * prec.bits / 4); }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void validate_spec(const SampleSpec& spec, const Real& eps0, const Real& delta0) {
  if (spec.n < 0) throw std::invalid_argument("sample count must be nonnegative");
  if (!(spec.r_min > 0.0)) throw std::invalid_argument("annulus r_min must be > 0 (origin excluded)");
  if (spec.r_max < spec.r_min) throw std::invalid_argument("annulus r_max < r_min");
  if (Real(spec.r_max) > eps0) throw std::invalid_argument("annulus r_max exceeds eps0");
  if (spec.t_max < spec.t_min) throw std::invalid_argument("t range reversed");
  if (Real(std::fabs(spec.t_min)) > delta0 || Real(std::fabs(spec.t_max)) > delta0) {
    throw std::invalid_argument("t range exceeds delta0");
  }
}

// (z2, t) for sample k.
std::pair<Complex, Real> sample_coords(const SampleSpec& spec, std::uint64_t k) {
  const Real u_r(uniform01(spec.seed, k, 0));
  const Real u_theta(uniform01(spec.seed, k, 1));
  const Real u_t(uniform01(spec.seed, k, 2));
  const Real r_min(spec.r_min);
  const Real r_max(spec.r_max);
  const Real r = sqrt(r_min * r_min + u_r * (r_max * r_max - r_min * r_min));
  const Real theta = ldexp(pi(), 1) * u_theta;
  const Real t = Real(spec.t_min) + u_t * (Real(spec.t_max) - Real(spec.t_min));
  return {r * Complex::polar_unit(theta), t};
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ (draw * 0xD6E8FEB86659FD93ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Complex surface_z1(const ModelSurface& m, const Complex& z2, const Real& t) {
  ScopedPrecision scope(m.precision());
  return Complex(-eval_P(m, z2) - eval_F(m, z2, t), t);
}

std::vector<SurfacePoint> sample_surface(const ModelSurface& m, const SampleSpec& spec) {
  ScopedPrecision scope(m.precision());
  validate_spec(spec, m.eps0(), m.delta0());
  const double tol = point_tolerance(m.precision());
  return map_indexed(
      static_cast<std::size_t>(spec.n),
      [&](std::size_t k) {
        auto [z2, t] = sample_coords(spec, k);
        Complex z1 = surface_z1(m, z2, t);
        const double res = abs(eval_rho(m, z1, z2)).to_double();
        if (!(res <= tol)) throw DomainError("surface solve failed");
        return SurfacePoint{std::move(z1), std::move(z2), res};
      },
      Exec::kParallel, m.precision().bits);
}

std::vector<SurfacePoint> sample_surface(const RadialSurface& rs, const SampleSpec& spec) {
  ScopedPrecision scope(rs.precision());
  validate_spec(spec, rs.eps0(), rs.delta0());
  const double tol = point_tolerance(rs.precision());
  return map_indexed(
      static_cast<std::size_t>(spec.n),
      [&](std::size_t k) {
        auto [z2, t] = sample_coords(spec, k);
        // Newton on x = Re z1; drho/dx = 1.
        Complex z1(Real(0), t);
        Real res = eval_radial_rho(rs, z1, z2);
        for (int iter = 0; iter < 8 && !(abs(res).to_double() <= tol); ++iter) {
          z1 = Complex(z1.real() - res, t);
          res = eval_radial_rho(rs, z1, z2);
        }
        const double res_d = abs(res).to_double();
        if (!(res_d <= tol)) throw DomainError("surface solve failed");
        return SurfacePoint{std::move(z1), std::move(z2), res_d};
      },
      Exec::kParallel, rs.precision().bits);
}

}  // namespace crflow
