// End-to-end acceptance run on the default models at 192 bits.
// Prints one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "crflow/checks.hpp"
#include "crflow/config.hpp"
#include "crflow/flow.hpp"

using namespace crflow;

namespace {

const Precision kPrec{192};
int failures = 0;

void line(int id, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
  if (!pass) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<IdentitySample> identity_samples(const std::vector<SurfacePoint>& pts, std::size_t n) {
  std::vector<IdentitySample> out;
  for (std::size_t k = 0; k < n && k < pts.size(); ++k) out.push_back({pts[k].z2, pts[k].z1.imag()});
  return out;
}

}  // namespace

int main() {
  ScopedPrecision scope(kPrec);
  const ModelSurface m0 = build_model(default_model(0.0));
  const ModelSurface m1 = build_model(default_model(1.0));
  const SampleSpec grid;
  const auto pts0 = sample_surface(m0, grid);
  const auto pts1 = sample_surface(m1, grid);
  const std::vector<Real> times = {Real(0.1), Real(-0.1), Real(0.5), Real(-0.5), Real(1.0)};

  {
    const auto r0 = check_invariance(m0, flow_of(m0), pts0, times);
    const auto r1 = check_invariance(m1, flow_of(m1), pts1, times);
    const double worst = std::max(r0.max_residual, r1.max_residual);
    line(1, worst <= 1e-25, "flow invariance max " + sci(worst) + " <= 1e-25");
  }
  {
    std::vector<std::pair<Real, Real>> st;
    for (std::uint64_t k = 0; k < 50; ++k) {
      st.emplace_back(Real(uniform01(7, 1, k) - 0.5), Real(uniform01(7, 2, k) - 0.5));
    }
    const auto r0 = check_group_law(flow_of(m0), pts0, st, kPrec);
    const auto r1 = check_group_law(flow_of(m1), pts1, st, kPrec);
    const double worst = std::max(r0.max_residual, r1.max_residual);
    line(2, worst <= 1e-25, "group law max " + sci(worst) + " <= 1e-25");
  }
  {
    const std::vector<Real> steps = {Real(1e-2), Real(1e-3), Real(1e-4)};
    const auto r0 = check_generator(flow_of(m0), field_of(m0), pts0, steps, kPrec);
    const auto r1 = check_generator(flow_of(m1), field_of(m1), pts1, steps, kPrec);
    line(3, r0.pass && r1.pass,
         "generator slopes " + sci(r0.metric("slope")) + ", " + sci(r1.metric("slope")) +
             " within 2 +- 0.1");
  }
  {
    double worst = 0.0;
    double worst_fd = 0.0;
    bool fd_ok = true;
    for (const ModelSurface* m : {&m0, &m1}) {
      const auto samples = identity_samples(m == &m0 ? pts0 : pts1, 50);
      for (Identity id : {Identity::kI, Identity::kII, Identity::kIII, Identity::kIV, Identity::kV}) {
        if (id == Identity::kIII && m->alpha().is_zero()) continue;
        worst = std::max(worst, check_identity(*m, id, samples).max_residual);
      }
      const auto agree = check_wirtinger_agreement(*m, samples);
      worst_fd = std::max(worst_fd, agree.max_residual);
      fd_ok = fd_ok && agree.pass;
    }
    line(4, worst <= 1e-24 && fd_ok,
         "identities max " + sci(worst) + " <= 1e-24; analytic vs FD " + sci(worst_fd) +
             " <= " + sci(fd_tolerance(kPrec)));
  }
  {
    const auto t0 = check_tangency(m0, field_of(m0), pts0);
    const auto t1 = check_tangency(m1, field_of(m1), pts1);
    const auto neg = check_tangency(m1, field_of(m0), pts1, /*require_matching=*/false);
    const double worst = std::max(t0.max_residual, t1.max_residual);
    line(5, worst <= 1e-24 && neg.max_residual >= 1e-6,
         "tangency max " + sci(worst) + " <= 1e-24; mismatched alpha " + sci(neg.max_residual) +
             " >= 1e-6");
  }
  {
    std::vector<int> orders;
    for (int k = 1; k <= 20; ++k) orders.push_back(k);
    const auto r = probe_infinite_vanishing(m1.profile(), orders,
                                            {Real(0.02), Real(0.01), Real(0.005)}, kPrec);
    line(6, r.pass, "vanishing max final value " + sci(r.max_residual) + " <= 1e-10, tails monotone");
  }
  {
    const auto r = probe_dilation(m1.profile(), Real(2),
                                  {Real(0.1), Real(0.05), Real(0.02), Real(0.01)}, kPrec);
    line(7, r.pass, "dilation ratio at r=0.01 " + sci(r.max_residual) + " >= 1e20, increasing");
  }
  {
    std::vector<Complex> zs = {Complex(Real(0.05), Real(0.02)), Complex(Real(-0.03), Real(0.06)),
                               Complex(Real(0.08))};
    std::vector<Complex> units = {Complex(1), Complex::polar_unit(pi() / Real(4)), Complex(-1),
                                  Complex::i()};
    const auto r = check_expansion(m1.profile(), zs, {Real(1e-2), Real(1e-3), Real(1e-4)}, units,
                                   kPrec);
    line(8, r.pass, "expansion |ratio-1| " + sci(r.max_residual) + " <= 0.05, shrink violations " +
                        std::to_string(static_cast<int>(r.metric("shrink_violations"))));
  }
  {
    const Real t_base(0.3);
    const FlowMap f = flow_of(m1);
    const double threshold = falsification_threshold(kPrec);
    const auto zero = residual_of_map(m1, PerturbedMap{f, t_base, {}, {}}, pts1,
                                      MapCriterion::kZeroTarget, zero_target_tolerance(kPrec));
    const Complex eps(1e-3);
    const std::vector<PerturbedMap> perturbed = {
        {f, t_base, {}, {{0, 2, eps}}},
        {f, t_base, {}, {{1, 1, eps}}},
        {f, t_base, {{1, 0, eps}}, {}},
    };
    double weakest = INFINITY;
    for (const auto& g : perturbed) {
      weakest = std::min(weakest,
                         residual_of_map(m1, g, pts1, MapCriterion::kLowerBound, threshold).max_residual);
    }
    std::vector<std::pair<Point2, Point2>> pairs;
    for (const auto& p : pts1) pairs.push_back({{p.z1, p.z2}, flow_closed(f, t_base, p.z1, p.z2)});
    const double recovered = abs(recover_flow_parameter(pairs) - t_base).to_double();
    line(9, zero.pass && weakest >= threshold && weakest >= 1e-22 && recovered <= 1e-20,
         "zero perturbation " + sci(zero.max_residual) + "; weakest perturbed " + sci(weakest) +
             " >= " + sci(threshold) + "; |t*-0.3| " + sci(recovered));
  }
  {
    const RadialSurface rs = build_radial(default_radial_model());
    const auto pts = sample_surface(rs, grid);
    const auto rep = check_radial(rs, pts, times, {Real(1), Real(-0.5), Real(2)});
    line(10,
         rep.rotation_invariance.max_residual <= 1e-30 &&
             rep.rotation_tangency.max_residual <= 1e-24 &&
             rep.dilation_field_tangency.max_residual >= 1e-6,
         "rotation " + sci(rep.rotation_invariance.max_residual) + " <= 1e-30; i beta z2 field " +
             sci(rep.rotation_tangency.max_residual) + " <= 1e-24; z1 field " +
             sci(rep.dilation_field_tangency.max_residual) + " >= 1e-6");
  }
  {
    const ModelConfig cfg = default_model(0.0);
    const ModelData data{HoloSeries(cfg.a), cfg.profile, cfg.eps0, cfg.delta0};
    const auto samples = identity_samples(pts0, 20);
    const auto r = check_alpha_limit(data, {Real(1e-4), Real(1e-6), Real(1e-8), Real(1e-10)},
                                     samples, Real(1), kPrec);
    line(11, r.pass,
         "alpha=1e-10 error " + sci(r.metric("smallest_alpha_error")) + " <= 1e-8; slopes " +
             sci(r.metric("slope_F")) + ", " + sci(r.metric("slope_P")) + ", " +
             sci(r.metric("slope_flow")));
  }
  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
