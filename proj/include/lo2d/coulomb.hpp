#pragma once

// Coulomb-type integrals for densities on R^2 with the 1/|x - y| kernel:
// the direct term, the attraction of point nuclei, nucleus-nucleus repulsion,
// and the two disk inequalities that control the Coulomb singularity.

#include "lo2d/bound_constants.hpp"
#include "lo2d/density.hpp"
#include "lo2d/execution.hpp"
#include "lo2d/geometry.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace lo2d {

// K nuclei of common charge z at distinct positions.
class MolecularConfig {
public:
  // Throws DomainError for z < 0, an empty list or coincident positions.
  static MolecularConfig create(double z, std::vector<Point> positions);

  double z() const { return m_z; }
  const std::vector<Point> &positions() const { return m_positions; }
  std::size_t size() const { return m_positions.size(); }

  // D_j = min_{k != j} |R_k - R_j| / 2. With a single nucleus the minimum is
  // empty and D_1 is reported as +infinity (see single_nucleus()).
  const std::vector<double> &half_distances() const { return m_half; }
  bool single_nucleus() const { return m_positions.size() == 1; }

private:
  MolecularConfig(double z, std::vector<Point> positions,
                  std::vector<double> half);

  double m_z;
  std::vector<Point> m_positions;
  std::vector<double> m_half;
};

struct DiskSpec {
  double radius{1.0};
  Point center{};
};

// Complete elliptic integral of the first kind, K(k) = pi / (2 AGM(1, k')),
// taking the complementary modulus k' = sqrt(1 - k^2) so that the logarithmic
// growth near k -> 1 is resolved without cancellation.
double elliptic_k_complement(double k_prime);
double elliptic_k(double k);

// Int_0^{2 pi} (r^2 + s^2 - 2 r s cos t)^{-1/2} dt = 4/r_> K(r_< / r_>).
// Returns +infinity for r == s (the caller splits there). s = 0 gives 2 pi/r.
double angular_coulomb_kernel(double r, double s);

// D(rho, rho) = 1/2 Int Int rho(x) rho(y) / |x - y|. Radial profiles go through
// the elliptic kernel; Gaussian mixtures with distinct centers use the exact
// pair formula for Gaussian blobs.
double direct_term(const DensityProfile &rho);

// Int V rho with V(x) = sum_i z / |x - R_i|.
double attraction_term(const DensityProfile &rho, const MolecularConfig &config);

// U = sum_{i<j} z^2 / |R_i - R_j|.
double repulsion_term(const MolecularConfig &config);

// Radial function on a disk, used as the test function of the uncertainty
// lemma.
struct RadialFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

// Radial profile seen as a function of the distance to its center.
RadialFunction as_radial_function(const DensityProfile &rho);

struct InequalityCheck {
  double lhs{0.0};
  double rhs{0.0};
  bool holds{true};
};

// Relative slack allowed on rhs when deciding whether lhs <= rhs holds.
inline constexpr double kInequalitySlack = 1.0e-9;

// With u(r) = 1/r - 1/R on the disk of radius R about the center of f:
//   |Int (2u + r u') f^{1/alpha}|
//      <= 1/alpha (C(g) Int |grad f|^g)^{1/g} (C(d) Int |x|^d |u|^d f^{3/(2 alpha)})^{1/d}
InequalityCheck verify_uncertainty_lemma(const RadialFunction &f,
                                         const DiskSpec &disk,
                                         const BoundParameters &params);

//   a b alpha |Int_{D_R} (1/|x| - 2/R) rho|
//      <= a^g C(g)/g Int_{D_R} |grad rho^alpha|^g + b^d C(d)/d Int_{D_R} rho^{3/2}
// with |x| measured from the disk center.
InequalityCheck verify_coulomb_uncertainty(const DensityProfile &rho,
                                           const DiskSpec &disk, double a,
                                           double b,
                                           const BoundParameters &params);

struct MonteCarloEstimate {
  double mean{0.0};
  double standard_error{0.0};
  std::uint64_t samples{0};
};

// D(rho, rho) = M^2/2 E[1/|X - Y|] with X, Y independent draws from rho/M.
// Needs a sampleable profile (Gaussian, exponential or mixture).
MonteCarloEstimate direct_term_monte_carlo(const DensityProfile &rho,
                                           std::uint64_t samples,
                                           std::uint64_t seed,
                                           Execution exec = Execution::parallel);

} // namespace lo2d
