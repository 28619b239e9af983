#pragma once

// Small-N symmetric product states psi = prod_i phi(x_i) on R^{2N} whose
// one-particle density, pair repulsion and indirect energy
//
//   E(psi) = < psi, sum_{i<j} |x_i - x_j|^{-1} psi > - D(rho_psi, rho_psi)
//
// are available exactly (Gaussian product) or by Monte Carlo (shifted mixture),
// and the check of E(psi) >= -b~^2 L(rho_psi) - a~^2 G(rho_psi).

#include "lo2d/bound_constants.hpp"
#include "lo2d/density.hpp"
#include "lo2d/execution.hpp"
#include "lo2d/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lo2d {

enum class WaveFunctionKind { gaussian_product, shifted_gaussian_mixture };

// |phi(x)|^2 = (1/K) sum_k (A/pi) exp(-A |x - c_k|^2); K = 1 with c = 0 for
// the plain Gaussian product.
struct WaveFunctionSpec {
  WaveFunctionKind kind{WaveFunctionKind::gaussian_product};
  int particles{2};
  double width{1.0};
  std::vector<Point> centers{};
  std::uint64_t seed{0};

  static WaveFunctionSpec gaussian_product(int particles, double width,
                                           std::uint64_t seed = 0);
  static WaveFunctionSpec shifted_mixture(int particles, double width,
                                          std::vector<Point> centers,
                                          std::uint64_t seed);
  // Throws DomainError for N < 2, A <= 0 or a mixture without centers.
  void validate() const;
};

struct Estimate {
  double value{0.0};
  double standard_error{0.0}; // 0 for closed-form values
};

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;

// rho_psi = N |phi|^2
DensityProfile single_particle_density(const WaveFunctionSpec &spec);

// sum_{i<j} 1 / |x_i - x_j| for one configuration.
double pair_energy(std::span<const Point> positions);

// < psi, sum_{i<j} |x_i - x_j|^{-1} psi >. Closed form N(N-1)/2 sqrt(pi A/2)
// for the Gaussian product, Monte Carlo over full N-particle configurations
// otherwise.
Estimate pair_repulsion_expectation(const WaveFunctionSpec &spec,
                                    std::uint64_t samples = kDefaultSamples,
                                    Execution exec = Execution::parallel);

// Monte Carlo path for any kind (used to cross-check the closed form).
Estimate pair_repulsion_monte_carlo(const WaveFunctionSpec &spec,
                                    std::uint64_t samples,
                                    Execution exec = Execution::parallel);

// Pair repulsion minus the direct term of the marginal.
Estimate indirect_energy(const WaveFunctionSpec &spec,
                         std::uint64_t samples = kDefaultSamples,
                         Execution exec = Execution::parallel);

struct BoundCheckResult {
  double lhs{0.0};   // E(psi)
  double rhs{0.0};   // -b~^2 L - a~^2 G
  double slack{0.0}; // lhs - rhs
  double tightness_ratio{0.0}; // lhs / rhs in (0, 1] when both are negative
  double statistical_error{0.0};

  // slack >= -(1e-6 |rhs| + 3 stderr)
  bool confirmed() const;
};

// The right-hand side with the standard constants a~^2(gamma, eps), b~^2(eps).
double bound_rhs(const DensityProfile &rho, const BoundParameters &params);

BoundCheckResult assemble_bound_check(const Estimate &lhs, double rhs);

BoundCheckResult check_main_bound(const WaveFunctionSpec &spec,
                                  const BoundParameters &params,
                                  std::uint64_t samples = kDefaultSamples,
                                  Execution exec = Execution::parallel);

struct ScanRow {
  std::size_t spec{0};
  double gamma{0.0};
  double epsilon{0.0};
  int particles{0};
  std::optional<BoundCheckResult> result; // empty when the cell was skipped
  std::string diagnostic;
};

struct ScanBest {
  double gamma{0.0};
  double epsilon{0.0};
  double ratio{0.0};
};

struct TightnessTable {
  std::vector<ScanRow> rows;    // spec-major, then gamma, then epsilon
  std::vector<ScanBest> best;   // per spec, largest tightness ratio
  std::size_t unconfirmed{0};   // cells with negative slack beyond tolerance
  std::size_t skipped{0};
};

// Grid of bound checks. Each spec's Monte Carlo stream is keyed by its own
// seed, so the table is independent of thread count and scheduling.
TightnessTable tightness_scan(const std::vector<WaveFunctionSpec> &specs,
                              const std::vector<double> &gamma_grid,
                              const std::vector<double> &epsilon_grid,
                              std::uint64_t samples = kDefaultSamples,
                              Execution exec = Execution::parallel);

} // namespace lo2d
