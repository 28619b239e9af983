#pragma once

#include "lo2d/geometry.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace lo2d {

struct QuadratureResult {
  double value{0.0};
  double error{0.0}; // upper estimate reported by the adaptive scheme

  QuadratureResult &operator+=(const QuadratureResult &other) {
    value += other.value;
    error += other.error;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

// f(x, xc) where xc is the signed distance from x to the nearest endpoint
// (a - x near a, b - x near b). Lets the integrand resolve logarithmic
// singularities at the endpoints without cancellation.
using EndpointIntegrand = std::function<double(double, double)>;

using PlanarIntegrand = std::function<double(Point)>;

// Adaptive 15-point Gauss-Kronrod over the consecutive panels of
// `breakpoints`. Throws DivergenceError (naming `what`) when the result is not
// finite or the error estimate stays far above rel_tol * Int|f|.
QuadratureResult integrate_panels(const Integrand &f,
                                  std::span<const double> breakpoints,
                                  double rel_tol, std::string_view what);

// Double-exponential (tanh-sinh) rule on [a, b]; for integrable endpoint
// singularities such as log|x - b|.
QuadratureResult integrate_endpoint_singular(const EndpointIntegrand &f,
                                             double a, double b,
                                             double rel_tol,
                                             std::string_view what);

// Nested Gauss-Kronrod over a rectangle, x outer and y inner.
QuadratureResult integrate_box(const PlanarIntegrand &f,
                               std::span<const double> x_breaks,
                               std::span<const double> y_breaks,
                               double rel_tol, std::string_view what);

// Int_{|x - center| < radius} f dx in polar coordinates about `center`.
// r_breaks must start at 0 and end at radius.
QuadratureResult integrate_disk(const PlanarIntegrand &f, Point center,
                                std::span<const double> r_breaks,
                                double rel_tol, std::string_view what);

// {0, s, 2s, 4s, ...} up to and including `outer`. Gives the adaptive rule a
// panel at the natural length scale of the integrand so that a narrow peak at
// the origin is never skipped by the first Kronrod pass on a wide interval.
std::vector<double> geometric_breakpoints(double scale, double outer);

} // namespace lo2d
