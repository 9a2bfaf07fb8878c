#pragma once

// The model hypersurfaces
//
//   M(a, alpha, p, q):  rho = Re z1 + P(z2) + F(z2, Im z1) = 0
//   radial surface:     rho = Re z1 + P(|z2|) + Im z1 * Q(|z2|, Im z1) = 0
//
// together with the scalar fields R, Q0 = tan R, P1, P, F and their
// Wirtinger derivatives d/dz2 = (d/dx - i d/dy)/2.
//
// All evaluators run at the model's precision and throw DomainError when a
// point leaves the guarded domain.

#include <cstdint>
#include <string>
#include <vector>

#include "crflow/mp.hpp"
#include "crflow/profile.hpp"
#include "crflow/series.hpp"

namespace crflow {

/// The parameter alpha. The alpha = 0 branch is an exact flag: a tiny
/// nonzero value always takes the alpha != 0 formulas.
class Alpha {
 public:
  static Alpha zero() { return Alpha(); }
  /// Throws std::invalid_argument if value is exactly zero or not finite.
  static Alpha nonzero(const Real& value);
  /// Zero branch iff value is exactly 0.
  static Alpha from_value(const Real& value);

  bool is_zero() const { return zero_; }
  /// 0 for the zero branch.
  const Real& value() const { return value_; }

  friend bool operator==(const Alpha& a, const Alpha& b) {
    return a.zero_ == b.zero_ && a.value_ == b.value_;
  }

 private:
  Alpha() = default;
  bool zero_ = true;
  Real value_;
};

struct Guards {
  double cos_guard = 0.1;
  double pos_guard = 0.1;
};

struct ShrinkOptions {
  int boundary_samples = 1000;
  double shrink_factor = 0.9;
  int max_shrinks = 400;
};

class ModelSurface {
 public:
  /// Validates the guards by dense sampling and shrinks eps0, delta0 until
  /// they hold. Throws std::invalid_argument on nonpositive radii and
  /// ConfigError if the guards cannot be met.
  static ModelSurface create(HoloSeries a, Alpha alpha, RadialProfile profile, const Real& eps0,
                             const Real& delta0, Precision prec = {}, Guards guards = {},
                             ShrinkOptions shrink = {});

  const HoloSeries& a() const { return a_; }
  const Alpha& alpha() const { return alpha_; }
  const RadialProfile& profile() const { return profile_; }
  const Real& eps0() const { return eps0_; }
  const Real& delta0() const { return delta0_; }
  const Real& requested_eps0() const { return requested_eps0_; }
  const Real& requested_delta0() const { return requested_delta0_; }
  Precision precision() const { return prec_; }
  const Guards& guards() const { return guards_; }

  /// sum a_n/n z^n and sum a_n/(in) z^n.
  const HoloSeries& series_over_n() const { return over_n_; }
  const HoloSeries& series_over_in() const { return over_in_; }

 private:
  ModelSurface(HoloSeries a, Alpha alpha, RadialProfile profile, Precision prec, Guards guards);

  HoloSeries a_;
  Alpha alpha_;
  RadialProfile profile_;
  HoloSeries over_n_;
  HoloSeries over_in_;
  Real eps0_;
  Real delta0_;
  Real requested_eps0_;
  Real requested_delta0_;
  Precision prec_;
  Guards guards_;
};

Real eval_R(const ModelSurface& m, const Complex& z2);
Real eval_Q0(const ModelSurface& m, const Complex& z2);
Real eval_P1(const ModelSurface& m, const Complex& z2);
Real eval_P(const ModelSurface& m, const Complex& z2);
Real eval_F(const ModelSurface& m, const Complex& z2, const Real& t);
/// dF/dt: tan(R + alpha t), or tan R for alpha = 0.
Real eval_F_t(const ModelSurface& m, const Complex& z2, const Real& t);
/// F = t Q; at t = 0 returns the removable value dF/dt(z2, 0) = tan R.
Real eval_Q_from_F(const ModelSurface& m, const Complex& z2, const Real& t);
Real eval_rho(const ModelSurface& m, const Complex& z1, const Complex& z2);

enum class Field { kR, kP1, kP, kQ0, kF };
enum class DerivMethod { kAnalytic, kFiniteDifference };

const char* field_name(Field f);

/// d/dz2 of a real field at (z2, t); t is ignored except for F.
/// The analytic method throws DomainError("derivative singular at origin")
/// at z2 = 0. The finite-difference method uses central differences with
/// step 2^(-bits/3).
Complex wirtinger(const ModelSurface& m, Field field, const Complex& z2, const Real& t,
                  DerivMethod method);

/// drho/dz1 = 1/2 + F_t/(2i) at t = Im z1.
Complex rho_z1(const ModelSurface& m, const Complex& z1, const Complex& z2);
/// drho/dz2 = P_z2 + F_z2 at t = Im z1, by the given method.
Complex rho_z2(const ModelSurface& m, const Complex& z1, const Complex& z2,
               DerivMethod method = DerivMethod::kAnalytic);

class RadialSurface {
 public:
  /// Throws std::invalid_argument on nonpositive radii.
  RadialSurface(RadialProfile profile, BivariatePoly q_fn, const Real& eps0, const Real& delta0,
                Precision prec = {});

  const RadialProfile& profile() const { return profile_; }
  const BivariatePoly& q_fn() const { return q_fn_; }
  const Real& eps0() const { return eps0_; }
  const Real& delta0() const { return delta0_; }
  Precision precision() const { return prec_; }

 private:
  RadialProfile profile_;
  BivariatePoly q_fn_;
  Real eps0_;
  Real delta0_;
  Precision prec_;
};

/// P(z2) = e^{p(|z2|)}, P(0) = 0.
Real eval_radial_P(const RadialSurface& rs, const Complex& z2);
Real eval_radial_rho(const RadialSurface& rs, const Complex& z1, const Complex& z2);
/// drho/dz1 = 1/2 + (Q + t Q_t)/(2i) at t = Im z1.
Complex radial_rho_z1(const RadialSurface& rs, const Complex& z1, const Complex& z2);
/// drho/dz2 = (P'(r) + t Q_r(r, t)) conj(z2)/(2r); throws at z2 = 0.
Complex radial_rho_z2(const RadialSurface& rs, const Complex& z1, const Complex& z2);

struct SurfacePoint {
  Complex z1;
  Complex z2;
  /// |rho(z1, z2)| recorded at construction.
  double rho_residual = 0.0;
};

struct SampleSpec {
  int n = 100;
  double r_min = 0.02;
  double r_max = 0.1;
  double t_min = -0.1;
  double t_max = 0.1;
  std::uint64_t seed = 1;
};

/// Acceptance bound on |rho| for constructed surface points: 2^(16 - 3 bits/4).
double point_tolerance(Precision prec);

/// Deterministic uniform sample of the annulus r_min <= |z2| <= r_max with
/// t = Im z1 uniform in [t_min, t_max]. Point k depends only on (seed, k).
/// Throws std::invalid_argument on a bad spec and DomainError
/// ("surface solve failed") if a point cannot be put on the surface.
std::vector<SurfacePoint> sample_surface(const ModelSurface& m, const SampleSpec& spec);
std::vector<SurfacePoint> sample_surface(const RadialSurface& rs, const SampleSpec& spec);

/// The on-surface point z1 = -P(z2) - F(z2, t) + i t.
Complex surface_z1(const ModelSurface& m, const Complex& z2, const Real& t);

/// Uniform double in [0, 1) from (seed, stream, draw); platform independent.
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw);

}  // namespace crflow
