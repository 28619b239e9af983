#include "lo2d/manybody.hpp"
#include "lo2d/coulomb.hpp"
#include "lo2d/errors.hpp"
#include "lo2d/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lo2d {

namespace {

// |phi|^2, normalised to one.
DensityProfile particle_density(const WaveFunctionSpec &spec) {
  if (spec.kind == WaveFunctionKind::gaussian_product) {
    return DensityProfile::gaussian(spec.width / std::numbers::pi, spec.width);
  }
  const double amp =
      spec.width / (std::numbers::pi * static_cast<double>(spec.centers.size()));
  std::vector<GaussianProfile> comps;
  for (const auto &c : spec.centers) {
    comps.push_back({amp, spec.width, c});
  }
  return DensityProfile::mixture(std::move(comps));
}

template <class Fn> void for_each_index(std::size_t n, Execution exec, Fn &&fn) {
  if (exec == Execution::parallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      fn(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
  }
}

} // namespace

WaveFunctionSpec WaveFunctionSpec::gaussian_product(int particles, double width,
                                                    std::uint64_t seed) {
  WaveFunctionSpec s{WaveFunctionKind::gaussian_product, particles, width, {},
                     seed};
  s.validate();
  return s;
}

WaveFunctionSpec WaveFunctionSpec::shifted_mixture(int particles, double width,
                                                   std::vector<Point> centers,
                                                   std::uint64_t seed) {
  WaveFunctionSpec s{WaveFunctionKind::shifted_gaussian_mixture, particles,
                     width, std::move(centers), seed};
  s.validate();
  return s;
}

void WaveFunctionSpec::validate() const {
  if (particles < 2) {
    throw DomainError("wave function needs N >= 2 particles");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("wave function width A must be positive");
  }
  if (kind == WaveFunctionKind::shifted_gaussian_mixture && centers.empty()) {
    throw DomainError("shifted Gaussian mixture needs at least one center");
  }
}

DensityProfile single_particle_density(const WaveFunctionSpec &spec) {
  spec.validate();
  const double n = static_cast<double>(spec.particles);
  if (spec.kind == WaveFunctionKind::gaussian_product) {
    return DensityProfile::gaussian(n * spec.width / std::numbers::pi,
                                    spec.width);
  }
  const double amp = n * spec.width /
                     (std::numbers::pi * static_cast<double>(spec.centers.size()));
  std::vector<GaussianProfile> comps;
  for (const auto &c : spec.centers) {
    comps.push_back({amp, spec.width, c});
  }
  return DensityProfile::mixture(std::move(comps));
}

double pair_energy(std::span<const Point> positions) {
  double total = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      total += 1.0 / distance(positions[i], positions[j]);
    }
  }
  return total;
}

Estimate pair_repulsion_monte_carlo(const WaveFunctionSpec &spec,
                                    std::uint64_t samples, Execution exec) {
  spec.validate();
  if (samples < 2) {
    throw DomainError("Monte Carlo needs at least two samples");
  }
  const DensitySampler sampler(particle_density(spec));
  const auto n = static_cast<std::size_t>(spec.particles);
  const auto stats =
      monte_carlo_mean(samples, spec.seed, 1, exec, [&](BlockRng &rng) {
        thread_local std::vector<Point> config;
        config.resize(n);
        for (auto &p : config) {
          p = sampler(rng);
        }
        return pair_energy(config);
      });
  return {stats.mean, stats.standard_error()};
}

Estimate pair_repulsion_expectation(const WaveFunctionSpec &spec,
                                    std::uint64_t samples, Execution exec) {
  spec.validate();
  if (spec.kind == WaveFunctionKind::gaussian_product) {
    const double n = static_cast<double>(spec.particles);
    return {0.5 * n * (n - 1.0) * std::sqrt(0.5 * std::numbers::pi * spec.width),
            0.0};
  }
  return pair_repulsion_monte_carlo(spec, samples, exec);
}

Estimate indirect_energy(const WaveFunctionSpec &spec, std::uint64_t samples,
                         Execution exec) {
  const auto pair = pair_repulsion_expectation(spec, samples, exec);
  const double direct = direct_term(single_particle_density(spec));
  return {pair.value - direct, pair.standard_error};
}

bool BoundCheckResult::confirmed() const {
  return slack >= -(1.0e-6 * std::abs(rhs) + 3.0 * statistical_error);
}

double bound_rhs(const DensityProfile &rho, const BoundParameters &params) {
  const auto f = evaluate_functionals(rho, params);
  return -b_tilde_squared(params.epsilon()) * f.L -
         a_tilde_squared(params) * f.G;
}

BoundCheckResult assemble_bound_check(const Estimate &lhs, double rhs) {
  BoundCheckResult r;
  r.lhs = lhs.value;
  r.rhs = rhs;
  r.slack = lhs.value - rhs;
  r.tightness_ratio = rhs < 0.0 ? lhs.value / rhs : 0.0;
  r.statistical_error = lhs.standard_error;
  return r;
}

BoundCheckResult check_main_bound(const WaveFunctionSpec &spec,
                                  const BoundParameters &params,
                                  std::uint64_t samples, Execution exec) {
  const auto rho = single_particle_density(spec);
  const auto lhs = indirect_energy(spec, samples, exec);
  return assemble_bound_check(lhs, bound_rhs(rho, params));
}

TightnessTable tightness_scan(const std::vector<WaveFunctionSpec> &specs,
                              const std::vector<double> &gamma_grid,
                              const std::vector<double> &epsilon_grid,
                              std::uint64_t samples, Execution exec) {
  if (specs.empty() || gamma_grid.empty() || epsilon_grid.empty()) {
    throw DomainError("tightness scan needs specs and nonempty grids");
  }
  for (double g : gamma_grid) {
    derive_parameters(g, 1.0);
  }
  for (double e : epsilon_grid) {
    derive_parameters(2.0, e);
  }
  const std::size_t n_spec = specs.size();
  const std::size_t n_g = gamma_grid.size();
  const std::size_t n_e = epsilon_grid.size();

  struct SpecData {
    std::optional<DensityProfile> rho;
    Estimate lhs;
    double L{0.0};
    std::string error;
  };
  std::vector<SpecData> data(n_spec);
  // Monte Carlo inside a cell runs serially; the cells are the parallel axis.
  for_each_index(n_spec, exec, [&](std::size_t s) {
    try {
      data[s].rho = single_particle_density(specs[s]);
      data[s].lhs = indirect_energy(specs[s], samples, Execution::serial);
      data[s].L = evaluate_L(*data[s].rho).value;
    } catch (const std::exception &e) {
      data[s].error = e.what();
    }
  });

  std::vector<double> G(n_spec * n_g, 0.0);
  std::vector<std::string> g_error(n_spec * n_g);
  for_each_index(n_spec * n_g, exec, [&](std::size_t k) {
    const std::size_t s = k / n_g;
    if (!data[s].error.empty()) {
      return;
    }
    try {
      G[k] = evaluate_G(*data[s].rho, derive_parameters(gamma_grid[k % n_g], 1.0))
                 .value;
    } catch (const std::exception &e) {
      g_error[k] = e.what();
    }
  });

  TightnessTable table;
  table.rows.reserve(n_spec * n_g * n_e);
  table.best.resize(n_spec);
  for (std::size_t s = 0; s < n_spec; ++s) {
    table.best[s].ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t ig = 0; ig < n_g; ++ig) {
      for (std::size_t ie = 0; ie < n_e; ++ie) {
        ScanRow row;
        row.spec = s;
        row.gamma = gamma_grid[ig];
        row.epsilon = epsilon_grid[ie];
        row.particles = specs[s].particles;
        const std::string &err =
            data[s].error.empty() ? g_error[s * n_g + ig] : data[s].error;
        if (!err.empty()) {
          row.diagnostic = err;
          ++table.skipped;
          table.rows.push_back(std::move(row));
          continue;
        }
        const auto params = derive_parameters(row.gamma, row.epsilon);
        const double rhs = -b_tilde_squared(row.epsilon) * data[s].L -
                           a_tilde_squared(params) * G[s * n_g + ig];
        row.result = assemble_bound_check(data[s].lhs, rhs);
        if (!row.result->confirmed()) {
          ++table.unconfirmed;
        }
        if (row.result->tightness_ratio > table.best[s].ratio) {
          table.best[s] = {row.gamma, row.epsilon, row.result->tightness_ratio};
        }
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

} // namespace lo2d
