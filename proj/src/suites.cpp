#include "crflow/suites.hpp"

#include <stdexcept>

#include "crflow/errors.hpp"
#include "crflow/flow.hpp"

namespace crflow {

namespace {

std::vector<Real> invariance_times() {
  return {Real(0.1), Real(-0.1), Real(0.5), Real(-0.5), Real(1.0)};
}

std::vector<IdentitySample> identity_samples(const std::vector<SurfacePoint>& pts,
                                             std::size_t n) {
  std::vector<IdentitySample> out;
  for (std::size_t k = 0; k < n && k < pts.size(); ++k) {
    out.push_back({pts[k].z2, pts[k].z1.imag()});
  }
  return out;
}

Alpha field_alpha(const SuiteConfig& cfg, const ModelSurface& m) {
  if (!cfg.field_alpha) return m.alpha();
  try {
    return Alpha::from_value(Real::from_string(*cfg.field_alpha));
  } catch (const std::exception&) {
    throw ConfigError("field_alpha: not a number");
  }
}

void run_model_suite(const std::string& name, const ModelSurface& m, const SuiteConfig& cfg,
                     Exec exec, SuiteResult& out) {
  const Precision prec = m.precision();
  const auto pts = sample_surface(m, cfg.grid);
  const Alpha fa = field_alpha(cfg, m);
  const VectorField field{m.a(), fa};
  const FlowMap flow{m.a(), fa};
  const bool matching = fa == m.alpha();

  if (name == "tangency") {
    out.reports.push_back(check_tangency(m, field, pts, matching, exec));
  } else if (name == "invariance") {
    out.reports.push_back(check_invariance(m, flow, pts, invariance_times(), exec));
  } else if (name == "group_law") {
    std::vector<std::pair<Real, Real>> st;
    for (std::uint64_t k = 0; k < 50; ++k) {
      st.emplace_back(Real(uniform01(cfg.grid.seed, 101, k) - 0.5),
                      Real(uniform01(cfg.grid.seed, 102, k) - 0.5));
    }
    out.reports.push_back(check_group_law(flow, pts, st, prec, exec));
    out.reports.push_back(check_inverse(flow, pts, invariance_times(), prec, exec));
  } else if (name == "generator") {
    out.reports.push_back(
        check_generator(flow, field, pts, {Real(1e-2), Real(1e-3), Real(1e-4)}, prec));
  } else if (name == "identities") {
    const auto samples = identity_samples(pts, 50);
    for (Identity id :
         {Identity::kI, Identity::kII, Identity::kIII, Identity::kIV, Identity::kV}) {
      if (id == Identity::kIII && m.alpha().is_zero()) continue;
      out.reports.push_back(check_identity(m, id, samples, DerivMethod::kAnalytic, exec));
      out.reports.push_back(check_identity_fd_agreement(m, id, samples, exec));
    }
    out.reports.push_back(check_wirtinger_agreement(m, samples, exec));
  } else if (name == "vanishing") {
    std::vector<int> orders;
    for (int k = 1; k <= 20; ++k) orders.push_back(k);
    out.reports.push_back(probe_infinite_vanishing(m.profile(), orders,
                                                   {Real(0.02), Real(0.01), Real(0.005)}, prec));
  } else if (name == "dilation") {
    out.reports.push_back(probe_dilation(m.profile(), Real(2),
                                         {Real(0.1), Real(0.05), Real(0.02), Real(0.01)}, prec));
  } else if (name == "expansion") {
    std::vector<Complex> zs;
    for (std::size_t k = 0; k < 10 && k < pts.size(); ++k) zs.push_back(pts[k].z2);
    const std::vector<Complex> units = {Complex(1), Complex::polar_unit(pi() / Real(4)),
                                        Complex(-1), Complex::i()};
    out.reports.push_back(
        check_expansion(m.profile(), zs, {Real(1e-2), Real(1e-3), Real(1e-4)}, units, prec));
  } else if (name == "perturbation") {
    const Real t_base(0.3);
    const Complex eps(1e-3);
    CheckReport zero = residual_of_map(m, PerturbedMap{flow, t_base, {}, {}}, pts,
                                       MapCriterion::kZeroTarget, zero_target_tolerance(prec),
                                       exec);
    zero.check_name = "unperturbed";
    out.reports.push_back(std::move(zero));
    const std::pair<const char*, PerturbedMap> cases[] = {
        {"perturb_eps02", {flow, t_base, {}, {{0, 2, eps}}}},
        {"perturb_eps11", {flow, t_base, {}, {{1, 1, eps}}}},
        {"perturb_eta10", {flow, t_base, {{1, 0, eps}}, {}}},
    };
    for (const auto& [label, g] : cases) {
      CheckReport r = residual_of_map(m, g, pts, MapCriterion::kLowerBound,
                                      falsification_threshold(prec), exec);
      r.check_name = label;
      out.reports.push_back(std::move(r));
    }
  } else if (name == "recover") {
    const Real t_base(0.3);
    std::vector<std::pair<Point2, Point2>> pairs;
    for (const auto& p : pts) pairs.push_back({{p.z1, p.z2}, flow_closed(flow, t_base, p.z1, p.z2)});
    const Real recovered = recover_flow_parameter(pairs);
    CheckReport r = make_bound_report("recover_t", CheckReport::Mode::kUpperBound,
                                      {abs(recovered - t_base).to_double()},
                                      zero_target_tolerance(prec));
    r.metrics.emplace_back("recovered_t", recovered.to_double());
    out.reports.push_back(std::move(r));
  } else if (name == "alpha_limit") {
    const ModelData data{m.a(), m.profile(), m.requested_eps0(), m.requested_delta0()};
    out.reports.push_back(check_alpha_limit(data,
                                            {Real(1e-4), Real(1e-6), Real(1e-8), Real(1e-10)},
                                            identity_samples(pts, 20), Real(1), prec));
  } else {
    throw ConfigError("unknown suite \"" + name + "\"");
  }
}

}  // namespace

SuiteResult run_suite(const std::string& name, const ModelConfig& model,
                      const ModelConfig& radial, const SuiteConfig& cfg, Exec exec) {
  SuiteResult out;
  out.suite = name;
  try {
    if (name == "radial") {
      const RadialSurface rs = build_radial(radial);
      ScopedPrecision scope(rs.precision());
      const auto pts = sample_surface(rs, cfg.grid);
      auto reps = check_radial(rs, pts, invariance_times(), {Real(1), Real(-0.5), Real(2)}, exec);
      out.reports = {std::move(reps.rotation_invariance), std::move(reps.rotation_tangency),
                     std::move(reps.dilation_field_tangency)};
    } else {
      const ModelSurface m = build_model(model);
      ScopedPrecision scope(m.precision());
      run_model_suite(name, m, cfg, exec, out);
    }
  } catch (const DomainError& e) {
    out.reports.clear();
    out.error = e.what();
  } catch (const std::invalid_argument& e) {
    out.reports.clear();
    out.error = e.what();
  }
  return out;
}

RunSummary run_suites(const SuiteConfig& cfg, Exec exec) {
  const int bits = cfg.precision_bits.value_or(-1);
  const ModelConfig model = load_model(cfg.model_path, bits);
  const int used_bits = model.precision_bits;
  const ModelConfig radial = cfg.radial_model_path ? load_model(*cfg.radial_model_path, used_bits)
                                                   : default_radial_model(used_bits);
  RunSummary run;
  run.model = cfg.model_path.filename().string();
  run.precision_bits = used_bits;
  run.seed = cfg.grid.seed;
  for (const auto& name : cfg.suites) {
    run.suites.push_back(run_suite(name, model, radial, cfg, exec));
  }
  return run;
}

}  // namespace crflow
