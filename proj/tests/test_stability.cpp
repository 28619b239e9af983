#include "lo2d/errors.hpp"
#include "lo2d/stability.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lo2d;

namespace {

constexpr double kPi = std::numbers::pi;
// mpmath (tests/oracles/frozen_values.py)
constexpr double kBracket_z1_b1sq2 = -0.96447876058881231054;

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

struct Standard {
  BoundParameters params;
  double a2;
  double b2;
  explicit Standard(double g, double e)
      : params(derive_parameters(g, e)), a2(a_tilde_squared(params)),
        b2(b_tilde_squared(e)) {}
};

} // namespace

TEST_SUITE("stability") {

TEST_CASE("verdict with the standard constants") {
  struct Case {
    double g, e;
  };
  for (const auto &c : {Case{2, 0.5}, Case{1.5, 1.0}, Case{2.2, 0.1}}) {
    const Standard t(c.g, c.e);
    const auto v = stability_verdict(t.params, t.a2, t.b2, 1.0);
    CHECK(std::abs(v.z_max - 1.0) <= 1e-9);
    CHECK(std::abs(v.sigma_star - 1.0 / (1.0 + c.e)) <= 1e-9);
    CHECK(v.stable);
    CHECK(stability_verdict(t.params, t.a2, t.b2, 0.0).stable);
    CHECK_FALSE(stability_verdict(t.params, t.a2, t.b2, 1.01).stable);
  }
  CHECK_THROWS_AS(stability_verdict(derive_parameters(2, 1), 1.0, 1.0, -1.0), DomainError);
}

TEST_CASE("z_max grows with b~^2 and does not fall with eps") {
  const Standard t(1.8, 0.7);
  const double base = stability_verdict(t.params, t.a2, t.b2, 1.0).z_max;
  CHECK(stability_verdict(t.params, t.a2, 2.0 * t.b2, 1.0).z_max > base);
  double prev = 0.0;
  for (double e : {0.05, 0.2, 1.0, 5.0, 20.0}) {
    const Standard s(1.8, e);
    const double z = stability_verdict(s.params, s.a2, s.b2, 1.0).z_max;
    CHECK(z >= prev - 1e-9);
    prev = z;
  }
}

TEST_CASE("analytic bound") {
  const auto cfg = MolecularConfig::create(1.0, {{0.0, 0.0}, {3.0, 0.0}});
  SUBCASE("minimal b2 reproduces the substituted bracket") {
    const double a = 0.8;
    const auto in = StabilityInputs::create(a, std::sqrt(2.0), 2.0 / a, 1.0);
    CHECK(close(analytic_stability_rhs(cfg, in), 4.0 / 3.0 * kBracket_z1_b1sq2, 1e-13));
  }
  SUBCASE("large b1 leaves z^2/8") {
    const auto in = StabilityInputs::create(1.0, 1e4, 2.0, 1.0);
    CHECK(analytic_stability_rhs(cfg, in) > 0.0);
    CHECK(close(analytic_stability_rhs(cfg, in), 4.0 / 3.0 / 8.0, 1e-9));
  }
  SUBCASE("precondition z <= a b2 / 2") {
    CHECK_THROWS_AS(analytic_stability_rhs(cfg, StabilityInputs::create(1.0, 1.0, 1.0, 1.0)),
                    PreconditionError);
    CHECK_THROWS_AS(StabilityInputs::create(0.0, 1.0, 1.0, 1.0), DomainError);
  }
  SUBCASE("single nucleus contributes nothing") {
    const auto one = MolecularConfig::create(1.0, {{0.0, 0.0}});
    CHECK(analytic_stability_rhs(one, StabilityInputs::create(1.0, 1.0, 2.0, 1.0)) == 0.0);
  }
  SUBCASE("proof path") {
    const Standard t(2.0, 1.0);
    const auto in = StabilityInputs::along_proof_path(t.params, t.a2, t.b2, 1.0);
    CHECK(close(in.b2, 2.0 / in.a, 1e-15));
    CHECK(close(in.b1 * in.b1, t.b2 / 2.0, 1e-9));
    CHECK(in.z == 1.0);
  }
}

TEST_CASE("xi breakdown against closed forms") {
  const Standard t(2.0, 1.0);
  SUBCASE("zero density leaves the repulsion") {
    const auto cfg = MolecularConfig::create(1.0, {{0.0, 0.0}, {2.5, 0.0}});
    const auto b = evaluate_xi(DensityProfile::zero(), cfg, t.params, t.a2, t.b2);
    CHECK(close(b.xi, 1.0 / 2.5, 1e-15));
    CHECK(b.gradient_term == 0.0);
    CHECK(b.direct == 0.0);
  }
  SUBCASE("no charge") {
    const auto rho = DensityProfile::gaussian(1.0, 2.0);
    const auto b = evaluate_xi(rho, MolecularConfig::create(0.0, {{0.0, 0.0}}), t.params, t.a2, t.b2);
    CHECK(b.attraction == 0.0);
    CHECK(close(b.xi, kinetic_functional(rho, t.params, t.a2, t.b2) + direct_term(rho), 1e-12));
    CHECK(b.xi >= 0.0);
  }
  SUBCASE("Gaussian on a single nucleus") {
    const double n = 2.0;
    const double a = 1.3;
    const double z = 0.9;
    const double c = n * a / kPi;
    const auto b = evaluate_xi(DensityProfile::gaussian(c, a),
                               MolecularConfig::create(z, {{0.0, 0.0}}), t.params, t.a2, t.b2);
    CHECK(close(b.gradient_term, t.a2 * gaussian_G(c, a, t.params), 1e-6));
    CHECK(close(b.l_term, t.b2 * gaussian_L(c, a), 1e-6));
    CHECK(close(b.attraction, z * n * std::sqrt(kPi * a), 1e-6));
    CHECK(close(b.direct, 0.5 * n * n * std::sqrt(0.5 * kPi * a), 1e-6));
    CHECK(b.repulsion == 0.0);
    CHECK(b.single_nucleus);
    CHECK(b.analytic_lower_bound == 0.0);
    CHECK(b.xi == b.gradient_term + b.l_term - b.attraction + b.direct + b.repulsion);
  }
}

TEST_CASE("empirical sweep") {
  const Standard t(2.0, 1.0);
  std::vector<DensityProfile> corpus;
  for (double a : {0.1, 0.4, 1.0, 3.0, 10.0}) {
    for (double n : {0.5, 1.0, 4.0}) {
      corpus.push_back(DensityProfile::gaussian(n * a / kPi, a));
    }
  }
  const double d = 2.0;
  const std::vector<MolecularConfig> configs = {
      MolecularConfig::create(1.0, {{0.0, 0.0}}),
      MolecularConfig::create(1.0, {{0.0, 0.0}, {d, 0.0}, {0.5 * d, 0.5 * std::sqrt(3.0) * d}}),
  };
  // blob at the centroid of the triangle
  const Point centroid{0.5 * d, d / (2.0 * std::sqrt(3.0))};
  corpus.push_back(DensityProfile::gaussian(1.0, 1.0, centroid));

  const auto serial = empirical_stability_sweep(corpus, configs, t.params, t.a2, t.b2, Execution::serial);
  CHECK(serial.passed());
  CHECK(serial.skipped == 0);
  CHECK(serial.cases.size() == corpus.size() * configs.size());
  CHECK(serial.min_xi >= 0.0);
  CHECK(std::abs(serial.verdict.z_max - 1.0) <= 1e-9);
  for (const auto &c : serial.cases) {
    REQUIRE(c.breakdown);
    CHECK(c.breakdown->stable);
    CHECK(c.breakdown->analytic_lower_bound <= c.breakdown->xi);
    CHECK(c.breakdown->xi >= -kStabilityTolerance * c.breakdown->scale());
  }

  const auto parallel = empirical_stability_sweep(corpus, configs, t.params, t.a2, t.b2, Execution::parallel);
  REQUIRE(parallel.cases.size() == serial.cases.size());
  for (std::size_t i = 0; i < serial.cases.size(); ++i) {
    CHECK(parallel.cases[i].profile == serial.cases[i].profile);
    CHECK(parallel.cases[i].config == serial.cases[i].config);
    CHECK(parallel.cases[i].breakdown->xi == serial.cases[i].breakdown->xi);
  }
}

TEST_CASE("scaled family stays stable") {
  const Standard t(1.6, 0.5);
  const auto cfg = MolecularConfig::create(1.0, {{0.0, 0.0}, {1.5, 0.0}});
  const auto base = DensityProfile::gaussian(1.0, 1.0, {0.75, 0.0});
  std::vector<DensityProfile> family;
  for (double lambda : {0.1, 0.3, 1.0, 3.0, 10.0}) {
    family.push_back(scale_density(base, lambda));
  }
  const auto rep = empirical_stability_sweep(family, {cfg}, t.params, t.a2, t.b2);
  CHECK(rep.passed());
  CHECK(rep.min_xi >= 0.0);
}

TEST_CASE("violations need a covered charge") {
  // Tiny kinetic constants make xi negative; with z above z_max the case is
  // reported but not counted as a violation.
  const auto p = derive_parameters(2.0, 1.0);
  // unit mass: attraction sqrt(pi) beats the direct term sqrt(pi/2)/2
  const auto rho = DensityProfile::gaussian(1.0 / kPi, 1.0);
  const auto cfg = MolecularConfig::create(1.0, {{0.0, 0.0}});
  const auto rep = empirical_stability_sweep({rho}, {cfg}, p, 1e-3, 1e-3);
  REQUIRE(rep.cases[0].breakdown);
  CHECK(rep.cases[0].breakdown->xi < 0.0);
  CHECK_FALSE(rep.verdict.stable);
  CHECK(rep.violations == 0);
}

} // TEST_SUITE
