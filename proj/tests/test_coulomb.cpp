#include "lo2d/coulomb.hpp"
#include "lo2d/density.hpp"
#include "lo2d/errors.hpp"

#include <doctest.h>

#include <boost/math/special_functions/ellint_1.hpp>

#include <cmath>
#include <numbers>

using namespace lo2d;

namespace {

constexpr double kPi = std::numbers::pi;

// mpmath, 50 digits (tests/oracles/frozen_values.py)
constexpr double kKernel_1_05 = 6.7430014192503841715;
constexpr double kLemmaLhs = 1.1839233853182761191;
constexpr double kLemmaRhs = 3.1003302654634134677;
constexpr double kCupLhs = 0.61455711429096022586;
constexpr double kCupRhs = 1.9776456374006116258;

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// E 1/|X - R| for X ~ (A/pi) exp(-A|x|^2) and |R| = s.
double gaussian_offset_potential(double A, double s) {
  const double x = 0.5 * A * s * s;
  return std::sqrt(kPi * A) * std::exp(-x) * std::cyl_bessel_i(0.0, x);
}

} // namespace

TEST_SUITE("coulomb") {

TEST_CASE("AGM elliptic K against library implementations") {
  for (double k = 0.0; k < 0.999; k += 0.0371) {
    CHECK(close(elliptic_k(k), std::comp_ellint_1(k), 1e-14));
    CHECK(close(elliptic_k(k), boost::math::ellint_1(k), 1e-14));
  }
  CHECK(elliptic_k(0.0) == doctest::Approx(kPi / 2).epsilon(1e-16));
  // near k = 1 through the complementary modulus
  // k = sqrt(1 - k'^2) keeps too few digits of k' below 1e-3 for a library check
  CHECK(close(elliptic_k_complement(1e-3), boost::math::ellint_1(std::sqrt(1.0 - 1e-6)), 1e-8));
  for (double kp : {1e-3, 1e-6, 1e-10}) {
    // K ~ log(4/k') as k' -> 0
    CHECK(std::abs(elliptic_k_complement(kp) - std::log(4.0 / kp)) < kp * kp * std::log(4.0 / kp) + 1e-12);
  }
  CHECK(std::isinf(elliptic_k(1.0)));
  CHECK_THROWS_AS(elliptic_k(1.5), DomainError);
}

TEST_CASE("angular kernel") {
  CHECK(close(angular_coulomb_kernel(1.0, 0.5), kKernel_1_05, 1e-14));
  // trapezoid rule on the periodic integrand
  const int n = 100000;
  double trap = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    trap += 1.0 / std::sqrt(1.25 - std::cos(t));
  }
  trap *= 2.0 * kPi / n;
  CHECK(close(angular_coulomb_kernel(1.0, 0.5), trap, 1e-8));
  for (double r : {0.1, 1.0, 7.0}) {
    CHECK(close(angular_coulomb_kernel(r, 0.0), 2.0 * kPi / r, 1e-15));
    for (double s : {0.2, 3.3}) {
      CHECK(angular_coulomb_kernel(r, s) == angular_coulomb_kernel(s, r));
    }
  }
  CHECK(std::isinf(angular_coulomb_kernel(0.7, 0.7)));
  // far field: kernel * r_> -> 2 pi
  for (double ratio : {1e-2, 1e-4}) {
    CHECK(close(angular_coulomb_kernel(1.0, ratio), 2.0 * kPi, ratio));
  }
}

TEST_CASE("direct term of the Gaussian") {
  for (double n : {1.0, 2.0, 7.5}) {
    for (double a : {0.3, 1.0, 4.0}) {
      const auto rho = DensityProfile::gaussian(n * a / kPi, a);
      CHECK(close(direct_term(rho), 0.5 * n * n * std::sqrt(0.5 * kPi * a), 1e-6));
    }
  }
  CHECK(direct_term(DensityProfile::zero()) == 0.0);
  CHECK(direct_term(DensityProfile::gaussian(0.0, 1.0)) == 0.0);
}

TEST_CASE("direct term scales linearly and is nonnegative") {
  std::vector<double> r, v;
  for (int i = 0; i <= 40; ++i) {
    r.push_back(0.05 * i);
    v.push_back(std::pow(std::max(0.0, 1.0 - 0.0025 * i * i), 2));
  }
  const std::vector<DensityProfile> corpus = {
      DensityProfile::gaussian(0.6, 1.7), DensityProfile::exponential(1.0, 2.0),
      DensityProfile::tabulated(r, v, TailModel::zero)};
  for (const auto &rho : corpus) {
    const double d = direct_term(rho);
    CHECK(d > 0.0);
    for (double lambda : {0.5, 3.0}) {
      CHECK(close(direct_term(scale_density(rho, lambda)), lambda * d, 1e-6));
    }
  }
}

TEST_CASE("direct term against Monte Carlo") {
  const std::vector<DensityProfile> corpus = {
      DensityProfile::gaussian(2.0 / kPi, 1.0),
      DensityProfile::exponential(0.5, 1.3),
      DensityProfile::mixture({{0.4, 1.0, {-1.0, 0.0}}, {0.2, 2.0, {1.0, 0.5}}}),
  };
  std::uint64_t seed = 11;
  for (const auto &rho : corpus) {
    const auto mc = direct_term_monte_carlo(rho, 1'000'000, seed++);
    CHECK(mc.samples == 1'000'000);
    CHECK(std::abs(direct_term(rho) - mc.mean) <= 3.0 * mc.standard_error);
  }
  CHECK_THROWS_AS(direct_term_monte_carlo(corpus[0], 1, 0), DomainError);
}

TEST_CASE("mixture direct term uses the pair formula") {
  // Two far-apart unit-mass blobs: self terms plus ~ 1/d
  const double a = 2.0;
  const auto mix = DensityProfile::mixture({{a / kPi, a, {-50.0, 0.0}}, {a / kPi, a, {50.0, 0.0}}});
  const double self = 0.5 * std::sqrt(0.5 * kPi * a);
  CHECK(close(direct_term(mix), 2.0 * self + 1.0 / 100.0, 1e-6));
  // concentric components reduce to the radial integral
  const auto concentric = DensityProfile::mixture({{0.3, 1.0, {}}, {0.5, 2.5, {}}});
  std::vector<double> r, v;
  for (int i = 0; i <= 120; ++i) {
    const double x = 0.05 * i;
    r.push_back(x);
    v.push_back(concentric.radial_value(x));
  }
  const auto table = DensityProfile::tabulated(r, v, TailModel::exponential);
  CHECK(close(direct_term(concentric), direct_term(table), 1e-5));
}

TEST_CASE("nuclear attraction") {
  const double n = 3.0;
  const double a = 1.6;
  const auto rho = DensityProfile::gaussian(n * a / kPi, a);
  const auto centered = MolecularConfig::create(0.7, {{0.0, 0.0}});
  CHECK(close(attraction_term(rho, centered), 0.7 * n * std::sqrt(kPi * a), 1e-9));
  for (double s : {0.3, 1.0, 2.5, 9.0}) {
    const auto off = MolecularConfig::create(1.0, {{0.0, s}});
    CHECK(close(attraction_term(rho, off), n * gaussian_offset_potential(a, s), 1e-8));
  }
  const auto two = MolecularConfig::create(2.0, {{0.5, 0.0}, {-0.5, 0.0}});
  CHECK(close(attraction_term(rho, two), 2.0 * 2.0 * n * gaussian_offset_potential(a, 0.5), 1e-8));
  CHECK(attraction_term(rho, MolecularConfig::create(0.0, {{0.0, 0.0}})) == 0.0);
  // far nucleus sees a point charge
  const double width = 1.0 / std::sqrt(a);
  const double d = 100.0 * width;
  CHECK(close(attraction_term(rho, MolecularConfig::create(1.0, {{d, 0.0}})), n / d, 1e-2));
}

TEST_CASE("attraction for exponential and mixture profiles") {
  // exponential: 2 pi C / k at the center
  const auto e = DensityProfile::exponential(0.8, 2.0);
  CHECK(close(attraction_term(e, MolecularConfig::create(1.0, {{0.0, 0.0}})), 2.0 * kPi * 0.8 / 2.0, 1e-9));
  const auto mix = DensityProfile::mixture({{1.0, 1.0, {1.0, 0.0}}, {0.5, 3.0, {0.0, -2.0}}});
  const auto cfg = MolecularConfig::create(1.0, {{0.0, 0.0}});
  const double expect = kPi * 1.0 / 1.0 * gaussian_offset_potential(1.0, 1.0) +
                        kPi * 0.5 / 3.0 * gaussian_offset_potential(3.0, 2.0);
  CHECK(close(attraction_term(mix, cfg), expect, 1e-8));
}

TEST_CASE("nuclear repulsion and configuration") {
  CHECK(repulsion_term(MolecularConfig::create(2.0, {{1.0, 1.0}})) == 0.0);
  CHECK(close(repulsion_term(MolecularConfig::create(1.5, {{0.0, 0.0}, {3.0, 4.0}})), 2.25 / 5.0, 1e-15));
  const double d = 1.7;
  const auto tri = MolecularConfig::create(
      1.0, {{0.0, 0.0}, {d, 0.0}, {0.5 * d, 0.5 * std::sqrt(3.0) * d}});
  CHECK(close(repulsion_term(tri), 3.0 / d, 1e-14));
  for (double h : tri.half_distances()) {
    CHECK(close(h, 0.5 * d, 1e-14));
  }
  const auto one = MolecularConfig::create(1.0, {{0.0, 0.0}});
  CHECK(one.single_nucleus());
  CHECK(std::isinf(one.half_distances()[0]));
  CHECK_THROWS_AS(MolecularConfig::create(1.0, {{0.0, 0.0}, {0.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(MolecularConfig::create(-1.0, {{0.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(MolecularConfig::create(1.0, {}), DomainError);
}

TEST_CASE("uncertainty lemma") {
  const auto p2 = derive_parameters(2.0, 1.0);
  const RadialFunction bump{[](double r) { return std::pow(1.0 - r * r, 2); },
                            [](double r) { return -4.0 * r * (1.0 - r * r); }};
  const auto res = verify_uncertainty_lemma(bump, {1.0, {}}, p2);
  CHECK(close(res.lhs, kLemmaLhs, 1e-9));
  CHECK(close(res.rhs, kLemmaRhs, 1e-9));
  CHECK(res.holds);

  const RadialFunction zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  const auto z = verify_uncertainty_lemma(zero, {1.0, {}}, p2);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);

  for (double g : {1.2, 1.5, 2.0, 2.5}) {
    const auto p = derive_parameters(g, 1.0);
    for (double R : {0.5, 1.0, 3.0}) {
      for (const auto &rho : {DensityProfile::gaussian(1.0, 1.0), DensityProfile::gaussian(4.0, 0.2),
                              DensityProfile::exponential(1.0, 1.5)}) {
        CHECK(verify_uncertainty_lemma(as_radial_function(rho), {R, {}}, p).holds);
      }
    }
  }
  CHECK_THROWS_AS(verify_uncertainty_lemma(bump, {0.0, {}}, p2), DomainError);
  CHECK_THROWS_AS(as_radial_function(DensityProfile::mixture({{1, 1, {0, 0}}, {1, 1, {1, 0}}})), DomainError);
}

TEST_CASE("Coulomb uncertainty principle") {
  const auto p2 = derive_parameters(2.0, 1.0);
  const auto rho = DensityProfile::gaussian(1.0, 1.0);
  const auto res = verify_coulomb_uncertainty(rho, {2.0, {}}, 1.0, 1.0, p2);
  CHECK(close(res.lhs, kCupLhs, 1e-9));
  CHECK(close(res.rhs, kCupRhs, 1e-9));
  CHECK(res.holds);

  const auto z = verify_coulomb_uncertainty(DensityProfile::zero(), {1.0, {}}, 1.0, 1.0, p2);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);

  for (double b : {0.5, 1.0, 2.0}) {
    const auto r = verify_coulomb_uncertainty(rho, {2.0, {}}, 1.0 / b, b, p2);
    CHECK(r.holds);
    CHECK(close(r.lhs, res.lhs, 1e-12));
  }
  CHECK_THROWS_AS(verify_coulomb_uncertainty(rho, {1.0, {}}, 0.0, 1.0, p2), DomainError);
}

TEST_CASE("Coulomb uncertainty: radial and planar paths agree") {
  const auto p = derive_parameters(1.5, 1.0);
  const Point c{0.3, -0.2};
  const auto radial = DensityProfile::gaussian(0.9, 1.4, c);
  // a second, remote component makes the mixture non-radial without adding
  // anything measurable inside the disk
  const auto planar = DensityProfile::mixture({{0.9, 1.4, c}, {1.0, 1.0, {40.0, 40.0}}});
  REQUIRE_FALSE(planar.is_radial());
  const auto a = verify_coulomb_uncertainty(radial, {1.5, c}, 0.8, 1.3, p);
  const auto b = verify_coulomb_uncertainty(planar, {1.5, c}, 0.8, 1.3, p);
  CHECK(close(a.lhs, b.lhs, 1e-7));
  CHECK(close(a.rhs, b.rhs, 1e-7));
}

TEST_CASE("both uncertainty principles over the smooth corpus") {
  std::vector<double> r, v;
  for (int i = 0; i <= 50; ++i) {
    r.push_back(0.04 * i);
    v.push_back(std::pow(1.0 - 0.0004 * i * i, 3));
  }
  const std::vector<DensityProfile> corpus = {
      DensityProfile::gaussian(1.0, 1.0), DensityProfile::gaussian(0.1, 0.3),
      DensityProfile::gaussian(8.0, 5.0), DensityProfile::exponential(1.0, 1.0),
      DensityProfile::tabulated(r, v, TailModel::zero)};
  for (double g : {1.2, 1.5, 2.0, 2.5}) {
    const auto p = derive_parameters(g, 1.0);
    for (const auto &rho : corpus) {
      for (double R : {0.5, 2.0}) {
        CHECK(verify_uncertainty_lemma(as_radial_function(rho), {R, {}}, p).holds);
        for (double a : {0.3, 1.0, 3.0}) {
          CHECK(verify_coulomb_uncertainty(rho, {R, {}}, a, 1.0 / a, p).holds);
          CHECK(verify_coulomb_uncertainty(rho, {R, {}}, a, 2.0, p).holds);
        }
      }
    }
  }
}

} // TEST_SUITE
