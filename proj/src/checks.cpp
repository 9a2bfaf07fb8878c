#include "crflow/checks.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "crflow/errors.hpp"

namespace crflow {

double zero_target_tolerance(Precision p) { return 10.0 * p.tolerance(); }
double fd_tolerance(Precision p) { return 1e3 * p.tolerance(); }
double falsification_threshold(Precision p) { return 1e3 * zero_target_tolerance(p); }

double CheckReport::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw std::out_of_range("no metric '" + key + "' in report " + check_name);
}

const char* mode_name(CheckReport::Mode m) {
  switch (m) {
    case CheckReport::Mode::kUpperBound:
      return "upper_bound";
    case CheckReport::Mode::kLowerBound:
      return "lower_bound";
    case CheckReport::Mode::kProbe:
      return "probe";
  }
  return "?";
}

CheckReport make_bound_report(std::string name, CheckReport::Mode mode,
                              const std::vector<double>& residuals, double tolerance,
                              const std::vector<std::string>& labels) {
  CheckReport r;
  r.check_name = std::move(name);
  r.mode = mode;
  r.tolerance_used = tolerance;
  r.points_evaluated = residuals.size();
  r.criterion = mode == CheckReport::Mode::kLowerBound ? "max_residual >= tolerance_used"
                                                       : "max_residual <= tolerance_used";
  bool all_finite = true;
  double sum = 0.0;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    const double v = residuals[k];
    if (!std::isfinite(v)) {
      all_finite = false;
      r.max_residual = std::numeric_limits<double>::infinity();
    } else {
      sum += v;
      if (v > r.max_residual) r.max_residual = v;
    }
    r.details.push_back({k, k < labels.size() ? labels[k] : std::string(), v});
  }
  r.mean_residual = residuals.empty() ? 0.0 : sum / static_cast<double>(residuals.size());
  if (residuals.empty()) {
    r.pass = false;
  } else if (mode == CheckReport::Mode::kLowerBound) {
    r.pass = all_finite && r.max_residual >= tolerance;
  } else {
    r.pass = all_finite && r.max_residual <= tolerance;
  }
  return r;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Complex half_minus_i_half(const Real& q) {
  // 1/2 + q/(2i) = 1/2 - i q/2
  return Complex(ldexp(Real(1), -1), ldexp(-q, -1));
}

bool same_series(const HoloSeries& a, const HoloSeries& b) { return a.coeffs() == b.coeffs(); }

void require_strictly_decreasing(const std::vector<Real>& radii, const char* what) {
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > Real(0))) throw std::invalid_argument(std::string(what) + " must be positive");
    if (k > 0 && !(radii[k] < radii[k - 1])) {
      throw std::invalid_argument(std::string(what) + " must be strictly decreasing");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Tangency, invariance, group law, generator

CheckReport check_tangency_field(const ModelSurface& m, const std::string& name,
                                 const HoloField& field, const std::vector<SurfacePoint>& pts,
                                 Exec exec) {
  const auto residuals = map_indexed(
      pts.size(),
      [&](std::size_t k) {
        const auto& p = pts[k];
        const Point2 h = field(p.z1, p.z2);
        const Complex value = rho_z1(m, p.z1, p.z2) * h.z1 + rho_z2(m, p.z1, p.z2) * h.z2;
        return abs(value.real()).to_double();
      },
      exec, m.precision().bits);
  return make_bound_report(name, CheckReport::Mode::kUpperBound, residuals,
                           zero_target_tolerance(m.precision()));
}

CheckReport check_tangency(const ModelSurface& m, const VectorField& v,
                           const std::vector<SurfacePoint>& pts, bool require_matching,
                           Exec exec) {
  if (require_matching && (!same_series(v.a, m.a()) || !(v.alpha == m.alpha()))) {
    throw DomainError("parameter mismatch");
  }
  return check_tangency_field(
      m, "tangency",
      [&v](const Complex& z1, const Complex& z2) { return eval_field(v, z1, z2); }, pts, exec);
}

CheckReport check_invariance(const ModelSurface& m, const FlowMap& f,
                             const std::vector<SurfacePoint>& pts, const std::vector<Real>& times,
                             Exec exec) {
  const std::size_t nt = times.size();
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < pts.size() * nt; ++k) {
    labels.push_back("p=" + std::to_string(k / nt) + " t=" + times[k % nt].to_string(6));
  }
  const auto residuals = map_indexed(
      pts.size() * nt,
      [&](std::size_t k) {
        const auto& p = pts[k / nt];
        const Point2 image = flow_closed(f, times[k % nt], p.z1, p.z2);
        return abs(eval_rho(m, image.z1, image.z2)).to_double();
      },
      exec, m.precision().bits);
  return make_bound_report("invariance", CheckReport::Mode::kUpperBound, residuals,
                           zero_target_tolerance(m.precision()), labels);
}

CheckReport check_group_law(const FlowMap& f, const std::vector<SurfacePoint>& pts,
                            const std::vector<std::pair<Real, Real>>& times, Precision prec,
                            Exec exec) {
  if (pts.empty()) throw std::invalid_argument("group law needs at least one point");
  const auto residuals = map_indexed(
      times.size(),
      [&](std::size_t k) {
        const auto& p = pts[k % pts.size()];
        const auto& [s, t] = times[k];
        const Point2 inner = flow_closed(f, t, p.z1, p.z2);
        const Point2 composed = flow_closed(f, s, inner.z1, inner.z2);
        const Point2 direct = flow_closed(f, s + t, p.z1, p.z2);
        return distance(composed, direct).to_double();
      },
      exec, prec.bits);
  return make_bound_report("group_law", CheckReport::Mode::kUpperBound, residuals,
                           zero_target_tolerance(prec));
}

CheckReport check_inverse(const FlowMap& f, const std::vector<SurfacePoint>& pts,
                          const std::vector<Real>& times, Precision prec, Exec exec) {
  const std::size_t nt = times.size();
  const auto residuals = map_indexed(
      pts.size() * nt,
      [&](std::size_t k) {
        const auto& p = pts[k / nt];
        const Real& t = times[k % nt];
        const Point2 there = flow_closed(f, t, p.z1, p.z2);
        const Point2 back = flow_closed(f, -t, there.z1, there.z2);
        return distance(back, Point2{p.z1, p.z2}).to_double();
      },
      exec, prec.bits);
  return make_bound_report("inverse", CheckReport::Mode::kUpperBound, residuals,
                           zero_target_tolerance(prec));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs >= 2 paired values");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckReport check_generator(const FlowMap& f, const VectorField& v,
                            const std::vector<SurfacePoint>& pts, const std::vector<Real>& steps,
                            Precision prec) {
  ScopedPrecision scope(prec);
  CheckReport r;
  r.check_name = "generator";
  r.mode = CheckReport::Mode::kProbe;
  r.criterion = "|loglog slope - 2| <= tolerance_used";
  r.tolerance_used = 0.1;

  std::vector<double> hs;
  std::vector<double> maxima;
  double sum = 0.0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    Real worst(0);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Real res = generator_check(f, v, pts[k].z1, pts[k].z2, steps[j]);
      sum += res.to_double();
      worst = max(worst, res);
      r.details.push_back({j * pts.size() + k, "h=" + steps[j].to_string(3), res.to_double()});
    }
    hs.push_back(steps[j].to_double());
    maxima.push_back(worst.to_double());
    r.metrics.emplace_back("residual_h" + std::to_string(j), worst.to_double());
  }
  r.points_evaluated = pts.size() * steps.size();
  r.mean_residual = r.points_evaluated ? sum / static_cast<double>(r.points_evaluated) : 0.0;

  const Complex origin(0);
  const double at_origin = generator_check(f, v, origin, origin, steps.front()).to_double();
  r.metrics.emplace_back("origin_residual", at_origin);

  double slope = std::numeric_limits<double>::quiet_NaN();
  bool positive = true;
  for (double m : maxima) positive = positive && m > 0.0 && std::isfinite(m);
  if (positive && maxima.size() >= 2) slope = loglog_slope(hs, maxima);
  r.metrics.emplace_back("slope", slope);
  // reported residual is the slope's distance from 2
  r.max_residual = std::isfinite(slope) ? std::fabs(slope - 2.0) : slope;
  r.pass = std::isfinite(slope) && std::fabs(slope - 2.0) <= r.tolerance_used && at_origin == 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Identities

const char* identity_name(Identity id) {
  switch (id) {
    case Identity::kI:
      return "i";
    case Identity::kII:
      return "ii";
    case Identity::kIII:
      return "iii";
    case Identity::kIV:
      return "iv";
    case Identity::kV:
      return "v";
  }
  return "?";
}

namespace {

Real f_t(const ModelSurface& m, const IdentitySample& s, DerivMethod method) {
  if (method == DerivMethod::kAnalytic) return eval_F_t(m, s.z2, s.t);
  const Real h(m.precision().fd_step());
  return (eval_F(m, s.z2, s.t + h) - eval_F(m, s.z2, s.t - h)) / ldexp(h, 1);
}

}  // namespace

Complex identity_value(const ModelSurface& m, Identity which, const IdentitySample& s,
                       DerivMethod method) {
  ScopedPrecision scope(m.precision());
  if (s.z2.is_zero()) throw DomainError("identity needs z2 != 0");
  if (which == Identity::kIII && m.alpha().is_zero()) {
    throw DomainError("identity iii undefined for alpha=0");
  }
  const Complex& z = s.z2;
  const Complex i = Complex::i();
  const Complex a = eval_series(m.a(), z);
  const Real q0 = eval_Q0(m, z);
  const Real& alpha = m.alpha().value();

  switch (which) {
    case Identity::kI: {
      const Complex q0_z = wirtinger(m, Field::kQ0, z, s.t, method);
      const Complex v = i * z * q0_z + ldexp(Real(1) + q0 * q0, -1) * (i * a);
      return Complex(v.real());
    }
    case Identity::kII: {
      const Complex p1_z = wirtinger(m, Field::kP1, z, s.t, method);
      const Real p1 = eval_P1(m, z);
      const Complex v = i * z * p1_z - half_minus_i_half(q0) * a * p1;
      return Complex(v.real());
    }
    case Identity::kIII: {
      const Complex p_z = wirtinger(m, Field::kP, z, s.t, method);
      const Real p = eval_P(m, z);
      const Real decay = expm1(-alpha * p) / alpha;
      const Complex v = i * z * p_z + decay * (half_minus_i_half(q0) * a);
      return Complex(v.real());
    }
    case Identity::kIV: {
      const Real ft = f_t(m, s, method);
      const Real f = eval_F(m, z, s.t);
      const Complex phase = exp(Complex(-alpha * f, alpha * s.t));
      return (Complex(ft, Real(1)) * phase) - Complex(q0, Real(1));
    }
    case Identity::kV: {
      const Complex f_z = wirtinger(m, Field::kF, z, s.t, method);
      const Real ft = f_t(m, s, method);
      const Complex v = ldexp(alpha, 1) * (i * z * f_z) + (ft - q0) * (i * a);
      return Complex(v.real());
    }
  }
  throw std::logic_error("unknown identity");
}

CheckReport check_identity(const ModelSurface& m, Identity which,
                           const std::vector<IdentitySample>& samples, DerivMethod method,
                           Exec exec) {
  if (which == Identity::kIII && m.alpha().is_zero()) {
    throw DomainError("identity iii undefined for alpha=0");
  }
  const auto residuals = map_indexed(
      samples.size(),
      [&](std::size_t k) { return abs(identity_value(m, which, samples[k], method)).to_double(); },
      exec, m.precision().bits);
  const double tol = method == DerivMethod::kAnalytic ? zero_target_tolerance(m.precision())
                                                      : fd_tolerance(m.precision());
  return make_bound_report(std::string("identity_") + identity_name(which) +
                               (method == DerivMethod::kAnalytic ? "" : "_fd"),
                           CheckReport::Mode::kUpperBound, residuals, tol);
}

CheckReport check_identity_fd_agreement(const ModelSurface& m, Identity which,
                                        const std::vector<IdentitySample>& samples, Exec exec) {
  const auto residuals = map_indexed(
      samples.size(),
      [&](std::size_t k) {
        const Complex an = identity_value(m, which, samples[k], DerivMethod::kAnalytic);
        const Complex fd = identity_value(m, which, samples[k], DerivMethod::kFiniteDifference);
        return abs(an - fd).to_double();
      },
      exec, m.precision().bits);
  return make_bound_report(std::string("identity_") + identity_name(which) + "_fd_agreement",
                           CheckReport::Mode::kUpperBound, residuals, fd_tolerance(m.precision()));
}

CheckReport check_wirtinger_agreement(const ModelSurface& m,
                                      const std::vector<IdentitySample>& samples, Exec exec) {
  constexpr Field kFields[] = {Field::kR, Field::kP1, Field::kP, Field::kQ0, Field::kF};
  const auto residuals = map_indexed(
      samples.size(),
      [&](std::size_t k) {
        Real worst(0);
        for (Field f : kFields) {
          const Complex an = wirtinger(m, f, samples[k].z2, samples[k].t, DerivMethod::kAnalytic);
          const Complex fd =
              wirtinger(m, f, samples[k].z2, samples[k].t, DerivMethod::kFiniteDifference);
          worst = max(worst, abs(an - fd));
        }
        return worst.to_double();
      },
      exec, m.precision().bits);
  return make_bound_report("wirtinger_agreement", CheckReport::Mode::kUpperBound, residuals,
                           fd_tolerance(m.precision()));
}

// ---------------------------------------------------------------------------
// Probes on the radial profile

CheckReport probe_infinite_vanishing(const RadialProfile& profile, const std::vector<int>& orders,
                                     const std::vector<Real>& radii, Precision prec) {
  ScopedPrecision scope(prec);
  require_strictly_decreasing(radii, "radii");
  if (radii.empty() || orders.empty()) throw std::invalid_argument("empty probe grid");

  CheckReport r;
  r.check_name = "vanishing";
  r.mode = CheckReport::Mode::kProbe;
  r.criterion = "per order: strictly decreasing tail and final value <= tolerance_used";
  r.tolerance_used = kVanishingBound;
  r.pass = true;
  const std::size_t tail = std::min<std::size_t>(3, radii.size());
  double sum = 0.0;
  int non_monotone = 0;
  for (int k : orders) {
    if (k < 0) throw std::invalid_argument("vanishing order must be >= 0");
    std::vector<Real> values;
    for (const auto& rad : radii) {
      values.push_back(profile.g(rad) / pow(rad, static_cast<long>(k)));
      const double v = values.back().to_double();
      sum += v;
      r.details.push_back({r.details.size(), "k=" + std::to_string(k) + " r=" + rad.to_string(4), v});
    }
    bool monotone = true;
    for (std::size_t j = values.size() - tail + 1; j < values.size(); ++j) {
      monotone = monotone && values[j] < values[j - 1];
    }
    if (!monotone) ++non_monotone;
    const double final_value = values.back().to_double();
    r.max_residual = std::max(r.max_residual, final_value);
    r.pass = r.pass && monotone && final_value <= kVanishingBound;
  }
  r.points_evaluated = r.details.size();
  r.mean_residual = sum / static_cast<double>(r.points_evaluated);
  r.metrics.emplace_back("non_monotone_orders", non_monotone);
  return r;
}

CheckReport probe_dilation(const RadialProfile& profile, const Real& scale,
                           const std::vector<Real>& radii, Precision prec) {
  ScopedPrecision scope(prec);
  if (scale == Real(1)) throw std::invalid_argument("degenerate probe");
  if (!(scale > Real(0))) throw std::invalid_argument("dilation scale must be positive");
  require_strictly_decreasing(radii, "radii");
  if (radii.empty()) throw std::invalid_argument("empty probe grid");

  const bool grows = scale > Real(1);
  CheckReport r;
  r.check_name = "dilation";
  r.mode = CheckReport::Mode::kProbe;
  r.criterion = grows ? "strictly increasing and final ratio >= tolerance_used"
                      : "strictly decreasing and final ratio <= tolerance_used";
  r.tolerance_used = grows ? kDivergenceBound : 1.0 / kDivergenceBound;

  std::vector<Real> ratios;
  double sum = 0.0;
  for (const auto& rad : radii) {
    ratios.push_back(exp(profile.p(scale * rad) - profile.p(rad)));
    const double v = ratios.back().to_double();
    sum += v;
    r.details.push_back({r.details.size(), "r=" + rad.to_string(4), v});
  }
  bool monotone = true;
  for (std::size_t j = 1; j < ratios.size(); ++j) {
    monotone = monotone && (grows ? ratios[j] > ratios[j - 1] : ratios[j] < ratios[j - 1]);
  }
  const Real& last = ratios.back();
  r.points_evaluated = ratios.size();
  r.mean_residual = sum / static_cast<double>(ratios.size());
  r.max_residual = last.to_double();
  r.metrics.emplace_back("monotone", monotone ? 1.0 : 0.0);
  r.pass = monotone &&
           (grows ? last >= Real(kDivergenceBound) : last <= Real(1.0 / kDivergenceBound));
  return r;
}

CheckReport check_expansion(const RadialProfile& profile, const std::vector<Complex>& z_samples,
                            const std::vector<Real>& beta_scales,
                            const std::vector<Complex>& units, Precision prec) {
  ScopedPrecision scope(prec);
  for (std::size_t k = 1; k < beta_scales.size(); ++k) {
    if (!(beta_scales[k] < beta_scales[k - 1])) {
      throw std::invalid_argument("beta scales must be strictly decreasing");
    }
  }
  if (beta_scales.empty() || z_samples.empty() || units.empty()) {
    throw std::invalid_argument("empty expansion grid");
  }
  const double noise = zero_target_tolerance(prec);

  CheckReport r;
  r.check_name = "expansion";
  r.mode = CheckReport::Mode::kProbe;
  r.criterion =
      "final |ratio-1| <= tolerance_used and |ratio-1|/s non-increasing (slack 1.1); "
      "Re(beta)=0 rows bounded by |beta|^2 g (|z||p'|+1)";
  r.tolerance_used = kExpansionTolerance;
  r.pass = true;
  int skipped = 0;
  int bound_violations = 0;
  int shrink_violations = 0;
  double sum = 0.0;
  std::size_t judged = 0;

  for (const auto& z : z_samples) {
    const Real rz = abs(z);
    const Real g_z = profile.g(rz);
    const Real slope = rz * profile.dp(rz);
    for (const auto& u : units) {
      double prev_err = -1.0;
      double prev_scale = 0.0;
      double final_err = -1.0;
      for (const auto& s : beta_scales) {
        const Complex beta = (s * g_z) * u;
        const Complex w = z + z * beta;
        const Real lhs = profile.g(abs(w)) - g_z;
        const Real predicted = g_z * slope * beta.real();
        std::string label = "z=" + z.real().to_string(4) + "+" + z.imag().to_string(4) +
                            "i u=" + u.real().to_string(3) + "+" + u.imag().to_string(3) +
                            "i s=" + s.to_string(3);
        if (predicted.is_zero()) {
          ++skipped;
          const Real bound = norm(beta) * g_z * (abs(slope) + Real(1));
          const bool ok = abs(lhs) <= bound;
          if (!ok) ++bound_violations;
          r.details.push_back({r.details.size(), label + " skipped", abs(lhs).to_double()});
          continue;
        }
        const double err = abs(lhs / predicted - Real(1)).to_double();
        const double sd = s.to_double();
        if (prev_err >= 0.0 && prev_err > noise) {
          const double allowed = kLinearShrinkSlack * prev_err * (sd / prev_scale);
          if (err > std::max(allowed, noise)) ++shrink_violations;
        }
        prev_err = err;
        prev_scale = sd;
        final_err = err;
        sum += err;
        ++judged;
        r.details.push_back({r.details.size(), label, err});
      }
      if (final_err >= 0.0) {
        r.max_residual = std::max(r.max_residual, final_err);
        if (final_err > kExpansionTolerance) r.pass = false;
      }
    }
  }
  r.points_evaluated = r.details.size();
  r.mean_residual = judged ? sum / static_cast<double>(judged) : 0.0;
  r.metrics.emplace_back("skipped", skipped);
  r.metrics.emplace_back("bound_violations", bound_violations);
  r.metrics.emplace_back("shrink_violations", shrink_violations);
  r.pass = r.pass && bound_violations == 0 && shrink_violations == 0 && judged > 0;
  return r;
}

// ---------------------------------------------------------------------------
// Perturbed maps and parameter recovery

Point2 PerturbedMap::operator()(const Complex& z1, const Complex& z2) const {
  Point2 out = flow_closed(base, t_base, z1, z2);
  for (const auto& term : component1) {
    out.z1 += term.coeff * pow(z1, long{term.z1_power}) * pow(z2, long{term.z2_power});
  }
  for (const auto& term : component2) {
    out.z2 += term.coeff * pow(z1, long{term.z1_power}) * pow(z2, long{term.z2_power});
  }
  return out;
}

CheckReport residual_of_map(const ModelSurface& m, const PerturbedMap& g,
                            const std::vector<SurfacePoint>& pts, MapCriterion criterion,
                            double threshold, Exec exec) {
  struct Outcome {
    double residual = 0.0;
    std::string guard;
  };
  const auto outcomes = map_indexed(
      pts.size(),
      [&](std::size_t k) {
        try {
          const Point2 image = g(pts[k].z1, pts[k].z2);
          return Outcome{abs(eval_rho(m, image.z1, image.z2)).to_double(), {}};
        } catch (const DomainError& e) {
          return Outcome{std::numeric_limits<double>::quiet_NaN(), e.what()};
        }
      },
      exec, m.precision().bits);

  std::vector<double> finite;
  for (const auto& o : outcomes) {
    if (o.guard.empty()) finite.push_back(o.residual);
  }
  const auto mode = criterion == MapCriterion::kZeroTarget ? CheckReport::Mode::kUpperBound
                                                           : CheckReport::Mode::kLowerBound;
  CheckReport r = make_bound_report("perturbed_map", mode, finite, threshold);
  r.details.clear();
  int violations = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes[k].guard.empty()) {
      r.details.push_back({k, "", outcomes[k].residual});
    } else {
      ++violations;
      r.details.push_back({k, "guard: " + outcomes[k].guard, outcomes[k].residual});
    }
  }
  r.metrics.emplace_back("guard_violations", violations);
  return r;
}

Real recover_flow_parameter(const std::vector<std::pair<Point2, Point2>>& samples) {
  Complex direction(0);
  bool observed = false;
  for (const auto& [input, image] : samples) {
    if (input.z2.is_zero()) continue;
    const Complex w = image.z2 / input.z2;
    direction += w / abs(w);
    observed = true;
  }
  if (!observed) throw DomainError("parameter unobservable");
  return arg(direction);
}

// ---------------------------------------------------------------------------
// Radial surface

RadialReports check_radial(const RadialSurface& rs, const std::vector<SurfacePoint>& pts,
                           const std::vector<Real>& times, const std::vector<Real>& betas,
                           Exec exec) {
  const int bits = rs.precision().bits;
  const std::size_t nt = times.size();
  const auto rotation = map_indexed(
      pts.size() * nt,
      [&](std::size_t k) {
        const auto& p = pts[k / nt];
        const Point2 image = rotation_flow(times[k % nt], p.z1, p.z2);
        return abs(eval_radial_rho(rs, image.z1, image.z2)).to_double();
      },
      exec, bits);

  const std::size_t nb = betas.size();
  const auto rot_tangency = map_indexed(
      pts.size() * nb,
      [&](std::size_t k) {
        const auto& p = pts[k / nb];
        const Complex z2_component = mul_i(betas[k % nb] * p.z2);
        const Complex value = radial_rho_z2(rs, p.z1, p.z2) * z2_component;
        return abs(value.real()).to_double();
      },
      exec, bits);

  const auto dilation = map_indexed(
      pts.size(),
      [&](std::size_t k) {
        const auto& p = pts[k];
        const Complex value = radial_rho_z1(rs, p.z1, p.z2) * p.z1;
        return abs(value.real()).to_double();
      },
      exec, bits);

  const Precision prec = rs.precision();
  return {
      make_bound_report("radial_rotation_invariance", CheckReport::Mode::kUpperBound, rotation,
                        prec.tolerance()),
      make_bound_report("radial_rotation_tangency", CheckReport::Mode::kUpperBound, rot_tangency,
                        zero_target_tolerance(prec)),
      make_bound_report("radial_z1_field_tangency", CheckReport::Mode::kLowerBound, dilation,
                        fd_tolerance(prec)),
  };
}

// ---------------------------------------------------------------------------
// alpha -> 0

CheckReport check_alpha_limit(const ModelData& data, const std::vector<Real>& alphas,
                              const std::vector<IdentitySample>& samples, const Real& flow_time,
                              Precision prec) {
  ScopedPrecision scope(prec);
  if (alphas.size() < 2) throw std::invalid_argument("alpha limit needs >= 2 alphas");
  if (samples.empty()) throw std::invalid_argument("alpha limit needs samples");

  const ModelSurface flat =
      ModelSurface::create(data.a, Alpha::zero(), data.profile, data.eps0, data.delta0, prec);
  const FlowMap flat_flow = flow_of(flat);

  CheckReport r;
  r.check_name = "alpha_limit";
  r.mode = CheckReport::Mode::kProbe;
  r.criterion = "slopes of F, P and flow errors within 1 +- 0.1; smallest-alpha error <= 1e-8";
  r.tolerance_used = 1e-8;

  std::vector<double> xs, err_f, err_p, err_flow;
  for (const auto& alpha_value : alphas) {
    const ModelSurface bent = ModelSurface::create(data.a, Alpha::nonzero(alpha_value),
                                                   data.profile, data.eps0, data.delta0, prec);
    const FlowMap bent_flow = flow_of(bent);
    Real worst_f(0), worst_p(0), worst_flow(0);
    for (const auto& s : samples) {
      const Real tan_r = eval_Q0(flat, s.z2);
      worst_f = max(worst_f, abs(eval_F(bent, s.z2, s.t) - s.t * tan_r));
      worst_p = max(worst_p, abs(eval_P(bent, s.z2) - eval_P1(flat, s.z2)));
      const Complex z1 = surface_z1(flat, s.z2, s.t);
      worst_flow = max(worst_flow, distance(flow_closed(bent_flow, flow_time, z1, s.z2),
                                            flow_closed(flat_flow, flow_time, z1, s.z2)));
    }
    xs.push_back(alpha_value.to_double());
    err_f.push_back(worst_f.to_double());
    err_p.push_back(worst_p.to_double());
    err_flow.push_back(worst_flow.to_double());
    const std::string tag = "alpha=" + fmt(xs.back());
    r.details.push_back({r.details.size(), tag + " F", err_f.back()});
    r.details.push_back({r.details.size(), tag + " P", err_p.back()});
    r.details.push_back({r.details.size(), tag + " flow", err_flow.back()});
  }
  const double slope_f = loglog_slope(xs, err_f);
  const double slope_p = loglog_slope(xs, err_p);
  const double slope_flow = loglog_slope(xs, err_flow);
  r.metrics = {{"slope_F", slope_f}, {"slope_P", slope_p}, {"slope_flow", slope_flow}};

  // smallest alpha
  std::size_t smallest = 0;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (std::fabs(xs[k]) < std::fabs(xs[smallest])) smallest = k;
  }
  const double final_err = std::max({err_f[smallest], err_p[smallest], err_flow[smallest]});
  r.metrics.emplace_back("smallest_alpha_error", final_err);

  double sum = 0.0;
  for (const auto& d : r.details) sum += d.residual;
  r.max_residual = final_err;
  r.points_evaluated = r.details.size();
  r.mean_residual = sum / static_cast<double>(r.points_evaluated);
  auto near_one = [](double s) { return std::isfinite(s) && std::fabs(s - 1.0) <= 0.1; };
  r.pass = near_one(slope_f) && near_one(slope_p) && near_one(slope_flow) && final_err <= 1e-8;
  return r;
}

}  // namespace crflow
