#include "lo2d/bound_constants.hpp"
#include "lo2d/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lo2d {

namespace {

void require_gamma(double gamma) {
  if (!(gamma >= 1.0 + kGammaGuard && gamma <= 3.0 - kGammaGuard)) {
    throw DomainError("gamma must lie in [1+1e-6, 3-1e-6], got " +
                      std::to_string(gamma));
  }
}

// 5 pi - 1, the only transcendental besides 4/3 that enters the constants.
constexpr double five_pi_minus_one() { return 5.0 * std::numbers::pi - 1.0; }

HBranches branches_unchecked(double sigma, double gamma, double a,
                             double b_tilde_sq) {
  const double delta = gamma / (gamma - 1.0);
  const double inner = b_tilde_sq * (3.0 - gamma) / (gamma - 1.0) /
                       sharp_constant_c(delta) * (1.0 - sigma);
  const double gradient =
      0.5 * a * std::pow(inner, (gamma - 1.0) / gamma);
  const double leading = 27.0 / 64.0 * b_tilde_sq * b_tilde_sq /
                         five_pi_minus_one() * sigma * sigma;
  return {gradient, leading};
}

} // namespace

BoundParameters::BoundParameters(double gamma, double epsilon)
    : m_gamma(gamma), m_epsilon(epsilon),
      m_alpha((3.0 - gamma) / (2.0 * gamma)),
      m_delta(gamma / (gamma - 1.0)) {}

BoundParameters BoundParameters::derive(double gamma, double epsilon) {
  require_gamma(gamma);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive and finite, got " +
                      std::to_string(epsilon));
  }
  return BoundParameters(gamma, epsilon);
}

double sharp_constant_c(double p) {
  if (!(p > 0.0)) {
    throw DomainError("C(p) requires p > 0, got " + std::to_string(p));
  }
  return p <= 2.0 ? std::exp2(1.0 - 0.5 * p) : 1.0;
}

double beta_constant() {
  return std::pow(4.0 / 3.0, 1.5) * std::sqrt(five_pi_minus_one());
}

double b_tilde_squared(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("b~^2 requires epsilon >= 0, got " +
                      std::to_string(epsilon));
  }
  return beta_constant() * (1.0 + epsilon);
}

double a_tilde_squared(const BoundParameters &params) {
  const double g = params.gamma();
  const double inner = (g - 1.0) / ((3.0 - g) * beta_constant() *
                                    params.epsilon()) *
                       sharp_constant_c(params.delta());
  return std::exp2(g) * sharp_constant_c(g) / (3.0 - g) *
         std::pow(inner, g - 1.0);
}

double a_tilde_squared_expanded(const BoundParameters &params) {
  const double g = params.gamma();
  const double inv_beta =
      std::pow(0.75, 1.5) / std::sqrt(five_pi_minus_one());
  const double inner = inv_beta / params.epsilon() * (g - 1.0) / (3.0 - g) *
                       sharp_constant_c(params.delta());
  return std::exp2(g) * sharp_constant_c(g) / (3.0 - g) *
         std::pow(inner, g - 1.0);
}

double a_tilde_from_a(double a, const BoundParameters &params) {
  if (!(a > 0.0)) {
    throw DomainError("coupling a must be positive");
  }
  const double g = params.gamma();
  return std::pow(a, g) * sharp_constant_c(g) / (2.0 * params.alpha() * g);
}

double a_from_a_tilde(double a_tilde_sq, const BoundParameters &params) {
  if (!(a_tilde_sq > 0.0)) {
    throw DomainError("a~^2 must be positive, got " +
                      std::to_string(a_tilde_sq));
  }
  const double g = params.gamma();
  return std::pow(2.0 * params.alpha() * g * a_tilde_sq / sharp_constant_c(g),
                  1.0 / g);
}

double b_tilde_from_couplings(double b1, double b2,
                              const BoundParameters &params) {
  if (!(b1 > 0.0) || !(b2 > 0.0)) {
    throw DomainError("couplings b1, b2 must be positive");
  }
  const double d = params.delta();
  return std::pow(b2, d) * sharp_constant_c(d) / (2.0 * params.alpha() * d) +
         b1 * b1;
}

HBranches h_branches(double sigma, double gamma, double a, double b_tilde_sq) {
  require_gamma(gamma);
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError("sigma must lie in (0,1), got " + std::to_string(sigma));
  }
  if (!(a > 0.0) || !(b_tilde_sq > 0.0)) {
    throw DomainError("h(sigma) requires a > 0 and b~^2 > 0");
  }
  return branches_unchecked(sigma, gamma, a, b_tilde_sq);
}

double h_of_sigma(double sigma, double gamma, double a, double b_tilde_sq) {
  return h_branches(sigma, gamma, a, b_tilde_sq).min();
}

HMaximum maximize_h(double gamma, double a, double b_tilde_sq) {
  require_gamma(gamma);
  if (!(a > 0.0) || !(b_tilde_sq > 0.0)) {
    throw DomainError("maximize_h requires a > 0 and b~^2 > 0");
  }
  // difference(0) = gradient(0) > 0, difference(1) = -leading(1) < 0
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1.0e-12) {
    const double mid = 0.5 * (lo + hi);
    const auto b = branches_unchecked(mid, gamma, a, b_tilde_sq);
    if (b.gradient > b.leading) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double sigma = 0.5 * (lo + hi);
  return {sigma, branches_unchecked(sigma, gamma, a, b_tilde_sq).min()};
}

} // namespace lo2d
