#include "lo2d/stability.hpp"
#include "lo2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lo2d {

StabilityInputs StabilityInputs::create(double a, double b1, double b2,
                                        double z) {
  if (!(a > 0.0) || !(b1 > 0.0) || !(b2 > 0.0) || !(z > 0.0)) {
    throw DomainError("stability couplings a, b1, b2, z must be positive");
  }
  return {a, b1, b2, z};
}

StabilityInputs StabilityInputs::along_proof_path(const BoundParameters &params,
                                                  double a_tilde_sq,
                                                  double b_tilde_sq,
                                                  double z) {
  const double a = a_from_a_tilde(a_tilde_sq, params);
  const auto peak = maximize_h(params.gamma(), a, b_tilde_sq);
  return create(a, std::sqrt(peak.sigma_star * b_tilde_sq), 2.0 * z / a, z);
}

double FunctionalBreakdown::scale() const {
  return std::abs(gradient_term) + std::abs(l_term) + std::abs(attraction) +
         std::abs(direct) + std::abs(repulsion);
}

StabilityVerdict stability_verdict(const BoundParameters &params,
                                   double a_tilde_sq, double b_tilde_sq,
                                   double z) {
  if (!(z >= 0.0)) {
    throw DomainError("nuclear charge must be >= 0");
  }
  const double a = a_from_a_tilde(a_tilde_sq, params);
  const auto peak = maximize_h(params.gamma(), a, b_tilde_sq);
  return {z <= peak.h_max * (1.0 + kChargeTolerance), peak.h_max,
          peak.sigma_star};
}

double analytic_stability_rhs(const MolecularConfig &config,
                              const StabilityInputs &in) {
  if (in.z > 0.5 * in.a * in.b2 * (1.0 + 1.0e-12)) {
    throw PreconditionError("analytic stability bound needs z <= a b2 / 2");
  }
  const double b1_4 = std::pow(in.b1, 4);
  const double z = in.z;
  const double bracket =
      z * z / 8.0 -
      4.0 / (27.0 * b1_4) *
          (2.0 * z * z * z * (std::numbers::pi - 1.0) +
           std::numbers::pi * std::pow(in.a * in.b2, 3));
  double inverse_sum = 0.0;
  for (double d : config.half_distances()) {
    inverse_sum += 1.0 / d; // 1/inf = 0 for a lone nucleus
  }
  return inverse_sum * bracket;
}

FunctionalBreakdown evaluate_xi(const DensityProfile &rho,
                                const MolecularConfig &config,
                                const BoundParameters &params,
                                double a_tilde_sq, double b_tilde_sq) {
  FunctionalBreakdown out;
  const auto f = evaluate_functionals(rho, params);
  out.gradient_term = a_tilde_sq * f.G;
  out.l_term = b_tilde_sq * f.L;
  out.attraction = attraction_term(rho, config);
  out.direct = direct_term(rho);
  out.repulsion = repulsion_term(config);
  out.xi = out.gradient_term + out.l_term - out.attraction + out.direct +
           out.repulsion;

  const auto verdict =
      stability_verdict(params, a_tilde_sq, b_tilde_sq, config.z());
  out.stable = verdict.stable;
  out.single_nucleus = config.single_nucleus();
  if (config.z() > 0.0) {
    out.analytic_lower_bound = analytic_stability_rhs(
        config, StabilityInputs::along_proof_path(params, a_tilde_sq,
                                                  b_tilde_sq, config.z()));
  }
  return out;
}

SweepReport empirical_stability_sweep(const std::vector<DensityProfile> &corpus,
                                      const std::vector<MolecularConfig> &configs,
                                      const BoundParameters &params,
                                      double a_tilde_sq, double b_tilde_sq,
                                      Execution exec) {
  SweepReport report;
  const std::size_t n_cfg = configs.size();
  const std::size_t total = corpus.size() * n_cfg;
  report.cases.resize(total);

  auto run_case = [&](std::size_t index) {
    SweepCase c{index / n_cfg, index % n_cfg, std::nullopt, {}, false};
    try {
      auto b = evaluate_xi(corpus[c.profile], configs[c.config], params,
                           a_tilde_sq, b_tilde_sq);
      c.violation = b.stable && b.xi < -kStabilityTolerance * b.scale();
      c.breakdown = b;
    } catch (const DivergenceError &e) {
      c.diagnostic = e.what();
    }
    report.cases[index] = std::move(c);
  };

  if (exec == Execution::parallel) {
    const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
      run_case(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < total; ++i) {
      run_case(i);
    }
  }

  report.min_xi = std::numeric_limits<double>::infinity();
  for (const auto &c : report.cases) {
    if (!c.breakdown) {
      ++report.skipped;
      continue;
    }
    report.min_xi = std::min(report.min_xi, c.breakdown->xi);
    report.violations += c.violation ? 1 : 0;
  }
  double z = 0.0;
  for (const auto &cfg : configs) {
    z = std::max(z, cfg.z());
  }
  report.verdict = stability_verdict(params, a_tilde_sq, b_tilde_sq, z);
  return report;
}

} // namespace lo2d
