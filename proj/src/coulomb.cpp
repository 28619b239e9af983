#include "lo2d/coulomb.hpp"
#include "lo2d/errors.hpp"
#include "lo2d/quadrature.hpp"
#include "lo2d/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lo2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1.0e-11;

// exp(-x) I0(x), switching to the asymptotic series once I0 would overflow.
double scaled_bessel_i0(double x) {
  if (x < 500.0) {
    return std::exp(-x) * std::cyl_bessel_i(0.0, x);
  }
  const double t = 1.0 / (8.0 * x);
  return (1.0 + t * (1.0 + t * (4.5 + t * 37.5))) /
         std::sqrt(kTwoPi * x);
}

// Int Int g1(x) g2(y) / |x - y| for two Gaussian blobs. X - Y is normal with
// per-axis variance v = 1/(2 A1) + 1/(2 A2) and mean offset m, and
// E 1/|X - Y| = sqrt(pi / (2 v)) exp(-m^2/(4v)) I0(m^2/(4v)).
double gaussian_pair_interaction(const GaussianProfile &g1,
                                 const GaussianProfile &g2) {
  const double m1 = std::numbers::pi * g1.amplitude / g1.width;
  const double m2 = std::numbers::pi * g2.amplitude / g2.width;
  const double var = 0.5 / g1.width + 0.5 / g2.width;
  const double offset = distance(g1.center, g2.center);
  const double x = offset * offset / (4.0 * var);
  return m1 * m2 * std::sqrt(std::numbers::pi / (2.0 * var)) *
         scaled_bessel_i0(x);
}

// Complementary modulus of r_< / r_> computed as sqrt(d (d + 2 r_<)) / r_>
// with d = r_> - r_<, which stays accurate as the radii merge.
double complement_from_gap(double gap, double small, double big) {
  return std::sqrt(gap * (gap + 2.0 * small)) / big;
}

// Int_0^1 g(t) t K(t) dt over panels from `breaks` (already mapped into
// [0,1)). Panels left of 1/2 are smooth and go to Gauss-Kronrod. The rest see
// the log singularity of K at t = 1, either on their right end or just past
// it, and go to tanh-sinh, whose nodes cluster at the endpoints.
double inner_kernel_integral(const std::function<double(double)> &g,
                             std::vector<double> breaks) {
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [](double t) { return !(t > 0.0 && t < 1.0); }),
               breaks.end());
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const auto split = std::upper_bound(breaks.begin(), breaks.end(), 0.5);
  std::vector<double> smooth(breaks.begin(), split);
  double total = 0.0;
  if (smooth.size() > 1) {
    total += integrate_panels(
                 [&g](double t) { return g(t) * t * elliptic_k(t); }, smooth,
                 kTol, "direct term (inner)")
                 .value;
  }
  for (auto it = std::max(split, breaks.begin() + 1); it != breaks.end(); ++it) {
    const double lo = *(it - 1);
    const double hi = *it;
    const bool touches_one = hi == 1.0;
    total += integrate_endpoint_singular(
                 [&g, touches_one](double t, double tc) {
                   // 1 - t is exact for t >= 1/2; tc is 1 - t near t = 1.
                   const double gap = touches_one && tc > 0.0 ? tc : 1.0 - t;
                   return g(t) * t *
                          elliptic_k_complement(std::sqrt(gap * (2.0 - gap)));
                 },
                 lo, hi, kTol, "direct term (diagonal)")
                 .value;
  }
  return total;
}

double radial_direct_term(const DensityProfile &rho) {
  // The kernel already holds one angular integral; the other gives 2 pi.
  // D = pi Int Int rho(r) rho(s) kernel(r,s) r s dr ds
  //   = 2 pi Int_0^inf rho(r) r Int_0^r rho(s) s (4/r) K(s/r) ds dr
  //   = 8 pi Int_0^inf rho(r) r^2 Int_0^1 rho(r t) t K(t) dt dr
  const auto breaks = rho.radial_breakpoints(1.0);
  auto outer = [&](double r) {
    const double v = rho.radial_value(r);
    if (v == 0.0) {
      return 0.0;
    }
    std::vector<double> scaled(breaks.size());
    std::transform(breaks.begin(), breaks.end(), scaled.begin(),
                   [r](double b) { return b / r; });
    const double inner = inner_kernel_integral(
        [&](double t) { return rho.radial_value(r * t); }, std::move(scaled));
    return 4.0 * kTwoPi * v * r * r * inner;
  };
  return integrate_panels(outer, breaks, 1.0e-10, "direct term D(rho,rho)")
      .value;
}

// Int rho(r) r kernel(r, s) dr for a radial profile and a nucleus at
// distance s from its center.
double radial_attraction(const DensityProfile &rho, double s) {
  auto breaks = rho.radial_breakpoints(1.0);
  if (s == 0.0) {
    return integrate_panels(
               [&rho](double r) { return kTwoPi * rho.radial_value(r); },
               breaks, kTol, "nuclear attraction")
        .value;
  }
  auto inside = [&rho, s](double r) {
    return rho.radial_value(r) * r * 4.0 / s *
           elliptic_k_complement(complement_from_gap(s - r, r, s));
  };
  auto outside = [&rho, s](double r) {
    return 4.0 * rho.radial_value(r) *
           elliptic_k_complement(complement_from_gap(r - s, s, r));
  };
  if (s >= breaks.back()) {
    // Nucleus beyond the support cutoff: the kernel is smooth on the support.
    return integrate_panels(inside, breaks, kTol, "nuclear attraction").value;
  }
  std::vector<double> below{};
  std::vector<double> above{};
  for (double b : breaks) {
    if (b < s) {
      below.push_back(b);
    } else if (b > s) {
      above.push_back(b);
    }
  }
  // below = {0, ..., b_lo}, above = {b_hi, ..., cutoff}; [b_lo, s] and
  // [s, b_hi] touch the singular point.
  double total = 0.0;
  if (below.size() > 1) {
    total += integrate_panels(inside, below, kTol, "nuclear attraction").value;
  }
  total += integrate_endpoint_singular(
               [&rho, s](double r, double rc) {
                 const double gap = rc > 0.0 ? rc : s - r;
                 return rho.radial_value(r) * r * 4.0 / s *
                        elliptic_k_complement(complement_from_gap(gap, r, s));
               },
               below.back(), s, kTol, "nuclear attraction")
               .value;
  total += integrate_endpoint_singular(
               [&rho, s](double r, double rc) {
                 const double gap = rc < 0.0 ? -rc : r - s;
                 return 4.0 * rho.radial_value(r) *
                        elliptic_k_complement(complement_from_gap(gap, s, r));
               },
               s, above.front(), kTol, "nuclear attraction")
               .value;
  if (above.size() > 1) {
    total += integrate_panels(outside, above, kTol, "nuclear attraction").value;
  }
  return total;
}

std::vector<double> disk_breaks(double radius) {
  return {0.0, radius / 16.0, radius / 8.0, radius / 4.0, radius / 2.0,
          radius};
}

double pow_abs(double x, double p) { return std::pow(std::abs(x), p); }

} // namespace

// ---------------------------------------------------------------------------

MolecularConfig::MolecularConfig(double z, std::vector<Point> positions,
                                 std::vector<double> half)
    : m_z(z), m_positions(std::move(positions)), m_half(std::move(half)) {}

MolecularConfig MolecularConfig::create(double z, std::vector<Point> positions) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("nuclear charge z must be finite and >= 0");
  }
  if (positions.empty()) {
    throw DomainError("molecular configuration needs at least one nucleus");
  }
  std::vector<double> half(positions.size(), kInf);
  for (std::size_t j = 0; j < positions.size(); ++j) {
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if (k == j) {
        continue;
      }
      const double d = distance(positions[j], positions[k]);
      if (d == 0.0) {
        throw DomainError("nuclei " + std::to_string(j) + " and " +
                          std::to_string(k) + " coincide");
      }
      half[j] = std::min(half[j], 0.5 * d);
    }
  }
  return MolecularConfig(z, std::move(positions), std::move(half));
}

double elliptic_k_complement(double k_prime) {
  if (!(k_prime > 0.0)) {
    return kInf;
  }
  double a = 1.0;
  double b = k_prime;
  for (int i = 0; i < 64 && std::abs(a - b) > 1.0e-16 * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (a + b);
}

double elliptic_k(double k) {
  if (!(std::abs(k) <= 1.0)) {
    throw DomainError("elliptic K requires |k| <= 1");
  }
  return elliptic_k_complement(std::sqrt((1.0 - k) * (1.0 + k)));
}

double angular_coulomb_kernel(double r, double s) {
  if (!(r >= 0.0) || !(s >= 0.0)) {
    throw DomainError("angular kernel requires r, s >= 0");
  }
  if (r == s) {
    return kInf;
  }
  const double big = std::max(r, s);
  const double small = std::min(r, s);
  return 4.0 / big *
         elliptic_k_complement(complement_from_gap(big - small, small, big));
}

double direct_term(const DensityProfile &rho) {
  if (rho.is_zero()) {
    return 0.0;
  }
  if (const auto *m = std::get_if<MixtureProfile>(&rho.variant())) {
    double total = 0.0;
    for (std::size_t k = 0; k < m->components.size(); ++k) {
      total += 0.5 * gaussian_pair_interaction(m->components[k],
                                               m->components[k]);
      for (std::size_t l = k + 1; l < m->components.size(); ++l) {
        total += gaussian_pair_interaction(m->components[k], m->components[l]);
      }
    }
    return total;
  }
  return radial_direct_term(rho);
}

double attraction_term(const DensityProfile &rho,
                       const MolecularConfig &config) {
  if (config.z() == 0.0 || rho.is_zero()) {
    return 0.0;
  }
  double total = 0.0;
  if (const auto *m = std::get_if<MixtureProfile>(&rho.variant())) {
    for (const auto &g : m->components) {
      const auto blob = DensityProfile::gaussian(g.amplitude, g.width, g.center);
      for (const auto &p : config.positions()) {
        total += radial_attraction(blob, distance(p, g.center));
      }
    }
  } else {
    for (const auto &p : config.positions()) {
      total += radial_attraction(rho, distance(p, rho.center()));
    }
  }
  return config.z() * total;
}

double repulsion_term(const MolecularConfig &config) {
  const auto &pos = config.positions();
  double total = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      total += 1.0 / distance(pos[i], pos[j]);
    }
  }
  return config.z() * config.z() * total;
}

RadialFunction as_radial_function(const DensityProfile &rho) {
  if (!rho.is_radial()) {
    throw DomainError("profile is not radial about its center");
  }
  return {[rho](double r) { return rho.radial_value(r); },
          rho.radial_power_derivative(1.0)};
}

InequalityCheck verify_uncertainty_lemma(const RadialFunction &f,
                                         const DiskSpec &disk,
                                         const BoundParameters &params) {
  if (!(disk.radius > 0.0)) {
    throw DomainError("disk radius must be positive");
  }
  const double R = disk.radius;
  const double g = params.gamma();
  const double d = params.delta();
  const double alpha = params.alpha();
  const auto breaks = disk_breaks(R);

  // 2u + r u' = 1/r - 2/R for u = 1/r - 1/R; times the area element r.
  const double signed_lhs =
      integrate_panels(
          [&](double r) {
            return kTwoPi * (1.0 - 2.0 * r / R) * pow_abs(f.value(r), 1.0 / alpha);
          },
          breaks, kTol, "uncertainty lemma (lhs)")
          .value;
  const double gradient =
      integrate_panels(
          [&](double r) { return kTwoPi * pow_abs(f.derivative(r), g) * r; },
          breaks, kTol, "uncertainty lemma (gradient)")
          .value;
  // |x|^d |u|^d = (1 - r/R)^d
  const double weighted =
      integrate_panels(
          [&](double r) {
            return kTwoPi * std::pow(1.0 - r / R, d) *
                   pow_abs(f.value(r), 1.5 / alpha) * r;
          },
          breaks, kTol, "uncertainty lemma (weight)")
          .value;
  InequalityCheck out;
  out.lhs = std::abs(signed_lhs);
  out.rhs = (1.0 / alpha) *
            std::pow(sharp_constant_c(g) * gradient, 1.0 / g) *
            std::pow(sharp_constant_c(d) * weighted, 1.0 / d);
  out.holds = out.lhs <= out.rhs * (1.0 + kInequalitySlack);
  return out;
}

InequalityCheck verify_coulomb_uncertainty(const DensityProfile &rho,
                                           const DiskSpec &disk, double a,
                                           double b,
                                           const BoundParameters &params) {
  if (!(disk.radius > 0.0)) {
    throw DomainError("disk radius must be positive");
  }
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("couplings a, b must be positive");
  }
  const double R = disk.radius;
  const double g = params.gamma();
  const double d = params.delta();
  const double alpha = params.alpha();
  const auto breaks = disk_breaks(R);

  double coulomb = 0.0;
  double gradient = 0.0;
  double leading = 0.0;
  if (rho.is_radial() && rho.center() == disk.center) {
    const auto slope = rho.radial_power_derivative(alpha);
    coulomb = integrate_panels(
                  [&](double r) {
                    return kTwoPi * (1.0 - 2.0 * r / R) * rho.radial_value(r);
                  },
                  breaks, kTol, "Coulomb uncertainty (singular term)")
                  .value;
    gradient = integrate_panels(
                   [&](double r) { return kTwoPi * pow_abs(slope(r), g) * r; },
                   breaks, kTol, "Coulomb uncertainty (gradient)")
                   .value;
    leading = integrate_panels(
                  [&](double r) {
                    const double v = rho.radial_value(r);
                    return kTwoPi * v * std::sqrt(v) * r;
                  },
                  breaks, kTol, "Coulomb uncertainty (rho^{3/2})")
                  .value;
  } else {
    const auto field = rho.power_gradient_field(alpha);
    const Point c = disk.center;
    coulomb = integrate_disk(
                  [&](Point x) {
                    return (1.0 / distance(x, c) - 2.0 / R) * rho.value(x);
                  },
                  c, breaks, 1.0e-9, "Coulomb uncertainty (singular term)")
                  .value;
    gradient = integrate_disk(
                   [&](Point x) { return std::pow(norm(field(x)), g); }, c,
                   breaks, 1.0e-9, "Coulomb uncertainty (gradient)")
                   .value;
    leading = integrate_disk(
                  [&](Point x) {
                    const double v = rho.value(x);
                    return v * std::sqrt(v);
                  },
                  c, breaks, 1.0e-9, "Coulomb uncertainty (rho^{3/2})")
                  .value;
  }
  InequalityCheck out;
  out.lhs = a * b * alpha * std::abs(coulomb);
  out.rhs = std::pow(a, g) * sharp_constant_c(g) / g * gradient +
            std::pow(b, d) * sharp_constant_c(d) / d * leading;
  out.holds = out.lhs <= out.rhs * (1.0 + kInequalitySlack);
  return out;
}

MonteCarloEstimate direct_term_monte_carlo(const DensityProfile &rho,
                                           std::uint64_t samples,
                                           std::uint64_t seed,
                                           Execution exec) {
  if (samples < 2) {
    throw DomainError("Monte Carlo needs at least two samples");
  }
  const DensitySampler sampler(rho);
  const auto stats = monte_carlo_mean(
      samples, seed, 0, exec, [&sampler](BlockRng &rng) {
        const Point x = sampler(rng);
        const Point y = sampler(rng);
        return 1.0 / distance(x, y);
      });
  const double factor = 0.5 * sampler.mass() * sampler.mass();
  return {factor * stats.mean, factor * stats.standard_error(), stats.count};
}

} // namespace lo2d
