#pragma once

// Closed-form constants of the two-dimensional indirect Coulomb bound
//
//   E(psi) >= -b~^2 * Int rho^{3/2} - a~^2 * Int |grad rho^alpha|^gamma
//
// together with the charge threshold h(sigma) of the auxiliary molecular
// system and its maximisation.

namespace lo2d {

// gamma is accepted on [1 + kGammaGuard, 3 - kGammaGuard]; both endpoints are
// poles of the constants, so values outside the band are rejected.
inline constexpr double kGammaGuard = 1.0e-6;

// (gamma, epsilon) with the derived exponents
//   alpha = (3 - gamma) / (2 gamma),   1/gamma + 1/delta = 1.
class BoundParameters {
public:
  // Throws DomainError unless gamma is inside the guard band and epsilon > 0.
  static BoundParameters derive(double gamma, double epsilon);

  double gamma() const { return m_gamma; }
  double epsilon() const { return m_epsilon; }
  double alpha() const { return m_alpha; }
  double delta() const { return m_delta; }

private:
  BoundParameters(double gamma, double epsilon);

  double m_gamma;
  double m_epsilon;
  double m_alpha;
  double m_delta;
};

// Sharp constant of |x|^p + |y|^p <= C(p) |x + iy|^p:
// 2^{1 - p/2} for 0 < p <= 2, 1 for p >= 2.
double sharp_constant_c(double p);

inline BoundParameters derive_parameters(double gamma, double epsilon) {
  return BoundParameters::derive(gamma, epsilon);
}

// beta = (4/3)^{3/2} sqrt(5 pi - 1) ~ 5.9045
double beta_constant();

// b~^2 = beta (1 + epsilon); independent of gamma. epsilon >= 0.
double b_tilde_squared(double epsilon);

// a~^2 = 2^g C(g)/(3-g) * [ (g-1)/((3-g) beta eps) * C(g/(g-1)) ]^{g-1}
double a_tilde_squared(const BoundParameters &params);

// The same constant written with (3/4)^{3/2} (5 pi - 1)^{-1/2} in place of
// 1/beta. Kept separate so the two spellings can be checked against each
// other.
double a_tilde_squared_expanded(const BoundParameters &params);

// a~^2 = a^gamma C(gamma) / (2 alpha gamma) and its inverse.
double a_tilde_from_a(double a, const BoundParameters &params);
double a_from_a_tilde(double a_tilde_sq, const BoundParameters &params);

// b~^2 = b2^delta C(delta) / (2 alpha delta) + b1^2
double b_tilde_from_couplings(double b1, double b2,
                              const BoundParameters &params);

struct HBranches {
  double gradient; // (a/2) [ b~^2 (3-g)/(g-1) / C(delta) (1 - sigma) ]^{(g-1)/g}
  double leading;  // (27/64) b~^4 / (5 pi - 1) sigma^2
  double min() const { return gradient < leading ? gradient : leading; }
};

// Both branches of h at sigma in (0,1). b~^4 is read as (b~^2)^2.
HBranches h_branches(double sigma, double gamma, double a, double b_tilde_sq);

double h_of_sigma(double sigma, double gamma, double a, double b_tilde_sq);

struct HMaximum {
  double sigma_star;
  double h_max;
};

// The gradient branch decreases and the leading branch increases in sigma, so
// max_sigma min(...) sits at their crossing. Located by bisection to 1e-12 in
// sigma.
HMaximum maximize_h(double gamma, double a, double b_tilde_sq);

} // namespace lo2d
