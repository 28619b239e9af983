#pragma once

// Nonnegative densities on R^2 and the two local functionals of the bound
//
//   L(rho) = Int rho^{3/2} dx,      G(rho) = Int |grad rho^alpha|^gamma dx,
//
// plus the mass-preserving dilation rho_lambda(x) = lambda^2 rho(lambda x).
// Radial profiles are integrated as 2 pi Int_0^inf (...) r dr; non-concentric
// Gaussian mixtures fall back to nested planar quadrature.

#include "lo2d/bound_constants.hpp"
#include "lo2d/geometry.hpp"
#include "lo2d/quadrature.hpp"

// pchip.hpp calls isnan unqualified.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <functional>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

namespace lo2d {

// rho(x) = amplitude * exp(-width |x - center|^2)
struct GaussianProfile {
  double amplitude{0.0};
  double width{1.0};
  Point center{};
};

// rho(x) = amplitude * exp(-decay |x - center|)
struct ExponentialProfile {
  double amplitude{0.0};
  double decay{1.0};
  Point center{};
};

enum class TailModel { zero, exponential };

// Radial table interpolated by a monotone (Fritsch-Butland) cubic. Below the
// first radius the first value is held; beyond the last radius the profile is
// either 0 (the last value must then be 0) or continues as
// rho_n exp(-k (r - r_n)) with k fitted to the last two samples.
class TabulatedProfile {
public:
  static TabulatedProfile create(std::vector<double> radii,
                                 std::vector<double> values, TailModel tail,
                                 Point center = {});

  const std::vector<double> &radii() const { return m_radii; }
  const std::vector<double> &values() const { return m_values; }
  TailModel tail() const { return m_tail; }
  double tail_decay() const { return m_tail_decay; }
  Point center() const { return m_center; }

  double value(double r) const;

  // d/dr of rho^alpha, from a monotone cubic through the tabulated rho^alpha.
  std::function<double(double)> power_derivative(double alpha) const;

private:
  using Interpolant = boost::math::interpolators::pchip<std::vector<double>>;

  TabulatedProfile(std::vector<double> radii, std::vector<double> values,
                   TailModel tail, double tail_decay, Point center);

  std::vector<double> m_radii;
  std::vector<double> m_values;
  TailModel m_tail;
  double m_tail_decay;
  Point m_center;
  std::shared_ptr<const Interpolant> m_rho;
};

// Sum of Gaussians, each with its own center. An empty mixture is the zero
// density.
struct MixtureProfile {
  std::vector<GaussianProfile> components;
};

class DensityProfile {
public:
  using Variant = std::variant<GaussianProfile, ExponentialProfile,
                               TabulatedProfile, MixtureProfile>;

  static DensityProfile gaussian(double amplitude, double width,
                                 Point center = {});
  static DensityProfile exponential(double amplitude, double decay,
                                    Point center = {});
  static DensityProfile tabulated(std::vector<double> radii,
                                  std::vector<double> values, TailModel tail,
                                  Point center = {});
  static DensityProfile mixture(std::vector<GaussianProfile> components);
  static DensityProfile zero() { return mixture({}); }

  const Variant &variant() const { return m_variant; }
  std::string_view kind_name() const;

  // Rotation center; for mixtures the first component's center (or the
  // origin when empty).
  Point center() const;
  // True when rho depends on |x - center()| only.
  bool is_radial() const;
  bool is_zero() const;

  double value(Point x) const;
  // rho at distance r from center(); requires is_radial().
  double radial_value(double r) const;
  // d/dr rho(r)^alpha about center(); requires is_radial().
  std::function<double(double)> radial_power_derivative(double alpha) const;
  // x -> grad rho^alpha (x); valid for every kind.
  std::function<Point(Point)> power_gradient_field(double alpha) const;

  // Radial panel edges out to where rho^decay_power has fallen below ~1e-19
  // of its peak.
  std::vector<double> radial_breakpoints(double decay_power) const;
  // Same for each axis of a bounding box about all mass (planar quadrature).
  std::vector<double> axis_breakpoints(double decay_power, bool x_axis) const;

  double mass() const;

  // rho_lambda(x) = lambda^2 rho(lambda x); preserves mass.
  DensityProfile scaled(double lambda) const;

private:
  explicit DensityProfile(Variant v) : m_variant(std::move(v)) {}
  Variant m_variant;
};

struct FunctionalValue {
  double L{0.0};
  double G{0.0};
  double gamma{0.0};
  double estimated_quadrature_error{0.0};
};

QuadratureResult evaluate_L(const DensityProfile &rho);
QuadratureResult evaluate_G(const DensityProfile &rho,
                            const BoundParameters &params);
FunctionalValue evaluate_functionals(const DensityProfile &rho,
                                     const BoundParameters &params);

DensityProfile scale_density(const DensityProfile &rho, double lambda);

// K(rho) = a~^2 G(rho) + b~^2 L(rho); homogeneous of degree 1 under scaling.
double kinetic_functional(const DensityProfile &rho,
                          const BoundParameters &params, double a_tilde_sq,
                          double b_tilde_sq);

// Closed forms for rho = C exp(-A |x|^2).
double gaussian_L(double amplitude, double width);
double gaussian_G(double amplitude, double width,
                  const BoundParameters &params);
// G/L for the Gaussian of mass N (C = N A / pi); independent of A.
double gaussian_G_over_L(double particles, const BoundParameters &params);

} // namespace lo2d
