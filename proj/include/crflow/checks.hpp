#pragma once

// Residual checks and asymptotic probes over the model surfaces.
//
// Tolerance ladder, in units of tau = Precision::tolerance():
//   zero-target checks            10 tau
//   finite-difference mediated    10^3 tau
//   falsification lower bounds    10^3 x the zero-target tolerance
//
// Uniqueness statements about all automorphism germs cannot be checked pointwise; the
// perturbation and parameter-recovery reports only establish consistency
// with them.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "crflow/flow.hpp"
#include "crflow/kernels.hpp"
#include "crflow/surface.hpp"

namespace crflow {

double zero_target_tolerance(Precision p);
double fd_tolerance(Precision p);
double falsification_threshold(Precision p);

struct DetailRow {
  std::size_t index = 0;
  std::string label;
  double residual = 0.0;
};

struct CheckReport {
  /// kUpperBound: pass iff max_residual <= tolerance_used.
  /// kLowerBound: pass iff max_residual >= tolerance_used (falsification).
  /// kProbe: pass decided by the operation; see `criterion`.
  enum class Mode { kUpperBound, kLowerBound, kProbe };

  std::string check_name;
  Mode mode = Mode::kUpperBound;
  std::string criterion;
  std::size_t points_evaluated = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance_used = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<DetailRow> details;

  double metric(const std::string& key) const;
};

const char* mode_name(CheckReport::Mode m);

/// Builds a bound report from per-point residuals, folded in index order.
/// Non-finite residuals count as failures.
CheckReport make_bound_report(std::string name, CheckReport::Mode mode,
                              const std::vector<double>& residuals, double tolerance,
                              const std::vector<std::string>& labels = {});

/// A holomorphic field (Z1, Z2) tested for tangency.
using HoloField = std::function<Point2(const Complex& z1, const Complex& z2)>;

/// |Re[rho_z1 Z1 + rho_z2 Z2]| at each point (analytic Wirtinger derivatives).
CheckReport check_tangency_field(const ModelSurface& m, const std::string& name,
                                 const HoloField& field, const std::vector<SurfacePoint>& pts,
                                 Exec exec = Exec::kParallel);

/// Tangency of H^{a,alpha}. With require_matching, a field whose (a, alpha)
/// differs from the model's throws DomainError("parameter mismatch");
/// otherwise the mismatch simply shows up in the residuals.
CheckReport check_tangency(const ModelSurface& m, const VectorField& v,
                           const std::vector<SurfacePoint>& pts, bool require_matching = true,
                           Exec exec = Exec::kParallel);

/// |rho(phi_t(p))| for every (p, t); point-major order.
CheckReport check_invariance(const ModelSurface& m, const FlowMap& f,
                             const std::vector<SurfacePoint>& pts, const std::vector<Real>& times,
                             Exec exec = Exec::kParallel);

/// |phi_s(phi_t(p)) - phi_{s+t}(p)| for times[k] applied to pts[k % |pts|].
CheckReport check_group_law(const FlowMap& f, const std::vector<SurfacePoint>& pts,
                            const std::vector<std::pair<Real, Real>>& times, Precision prec,
                            Exec exec = Exec::kParallel);

/// |phi_{-t}(phi_t(p)) - p|.
CheckReport check_inverse(const FlowMap& f, const std::vector<SurfacePoint>& pts,
                          const std::vector<Real>& times, Precision prec,
                          Exec exec = Exec::kParallel);

/// Central-difference generator residuals for each step h (max over points);
/// passes iff the log-log slope is within 2 +- 0.1. max_residual is
/// |slope - 2|; the per-step maxima are metrics.
CheckReport check_generator(const FlowMap& f, const VectorField& v,
                            const std::vector<SurfacePoint>& pts, const std::vector<Real>& steps,
                            Precision prec);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

enum class Identity { kI, kII, kIII, kIV, kV };
const char* identity_name(Identity id);

struct IdentitySample {
  Complex z2;
  Real t;
};

/// Signed left-hand side minus right-hand side of one identity at (z2, t).
/// Real-part identities return a real value; (iv) is complex.
Complex identity_value(const ModelSurface& m, Identity which, const IdentitySample& s,
                       DerivMethod method);

/// Residual report for one identity. Throws DomainError for z2 = 0 and
/// "identity iii undefined for alpha=0".
CheckReport check_identity(const ModelSurface& m, Identity which,
                           const std::vector<IdentitySample>& samples,
                           DerivMethod method = DerivMethod::kAnalytic,
                           Exec exec = Exec::kParallel);

/// |identity_value(analytic) - identity_value(finite difference)|, tol 10^3 tau.
CheckReport check_identity_fd_agreement(const ModelSurface& m, Identity which,
                                        const std::vector<IdentitySample>& samples,
                                        Exec exec = Exec::kParallel);

/// max over the five fields of |analytic - finite-difference| Wirtinger derivative.
CheckReport check_wirtinger_agreement(const ModelSurface& m,
                                      const std::vector<IdentitySample>& samples,
                                      Exec exec = Exec::kParallel);

/// Rows e^{p(r)}/r^k. Passes iff, for every k, the last min(3, |radii|)
/// entries decrease strictly and the final one is <= 1e-10.
CheckReport probe_infinite_vanishing(const RadialProfile& profile, const std::vector<int>& orders,
                                     const std::vector<Real>& radii, Precision prec);

inline constexpr double kVanishingBound = 1e-10;
inline constexpr double kDivergenceBound = 1e20;

/// Rows e^{p(scale r) - p(r)}. Passes iff the sequence is strictly monotone
/// towards +inf (scale > 1) or 0 (scale < 1) and the final entry is beyond
/// 1e20 (resp. below 1e-20). Throws std::invalid_argument("degenerate probe")
/// for scale = 1.
CheckReport probe_dilation(const RadialProfile& profile, const Real& scale,
                           const std::vector<Real>& radii, Precision prec);

inline constexpr double kExpansionTolerance = 0.05;
inline constexpr double kLinearShrinkSlack = 1.1;

/// Compares g(|z + z beta|) - g(|z|) with g(|z|) |z| p'(|z|) Re(beta) for
/// beta = s g(|z|) u. Scales must be decreasing. Samples with Re(beta) = 0
/// are skipped (counted) and instead bounded by |beta|^2 g(|z|) (|z||p'| + 1).
CheckReport check_expansion(const RadialProfile& profile, const std::vector<Complex>& z_samples,
                            const std::vector<Real>& beta_scales,
                            const std::vector<Complex>& units, Precision prec);

struct PerturbTerm {
  int z1_power = 0;
  int z2_power = 0;
  Complex coeff;
};

/// phi_{t_base} plus polynomial terms added to each component.
struct PerturbedMap {
  FlowMap base;
  Real t_base;
  std::vector<PerturbTerm> component1;
  std::vector<PerturbTerm> component2;

  Point2 operator()(const Complex& z1, const Complex& z2) const;
};

enum class MapCriterion { kZeroTarget, kLowerBound };

/// |rho(g(p))| per point. Guard violations are recorded per point (label
/// "guard: ...") and excluded from the statistics.
CheckReport residual_of_map(const ModelSurface& m, const PerturbedMap& g,
                            const std::vector<SurfacePoint>& pts, MapCriterion criterion,
                            double threshold, Exec exec = Exec::kParallel);

/// Circular mean of arg(image.z2 / input.z2) over samples with z2 != 0,
/// in (-pi, pi]. Throws DomainError("parameter unobservable").
Real recover_flow_parameter(const std::vector<std::pair<Point2, Point2>>& samples);

struct RadialReports {
  CheckReport rotation_invariance;
  CheckReport rotation_tangency;
  CheckReport dilation_field_tangency;
};

/// Rotation invariance |rho(R_t(p))| (tol tau), tangency of i beta z2 d/dz2
/// (tol 10 tau) and the z1 d/dz1 negative control (lower bound 10^3 tau).
RadialReports check_radial(const RadialSurface& rs, const std::vector<SurfacePoint>& pts,
                           const std::vector<Real>& times, const std::vector<Real>& betas,
                           Exec exec = Exec::kParallel);

/// Model data shared by the alpha -> 0 comparison.
struct ModelData {
  HoloSeries a;
  RadialProfile profile;
  Real eps0;
  Real delta0;
};

/// For each alpha: max |F_alpha - t tan R|, |P_alpha - P1| and
/// |phi^alpha_t - phi^0_t| over the samples. Passes iff each quantity has
/// log-log slope 1 +- 0.1 in alpha and the smallest alpha's error is <= 1e-8.
/// max_residual is that smallest-alpha error.
CheckReport check_alpha_limit(const ModelData& data, const std::vector<Real>& alphas,
                              const std::vector<IdentitySample>& samples, const Real& flow_time,
                              Precision prec);

}  // namespace crflow
