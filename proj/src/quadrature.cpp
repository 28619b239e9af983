#include "lo2d/quadrature.hpp"
#include "lo2d/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace lo2d {

namespace {

// Global adaptive bisection (QAG style): always split the segment with the
// largest error. Boost's recursive driver refines both halves of every
// segment that misses the target, which costs 2^depth evaluations once the
// integrand's rounding noise sits above the tolerance (interpolated tables).
constexpr std::size_t kMaxSegments = 4000;
// Error estimates beyond this multiple of the requested tolerance mean the
// panel refinement gave up, which for our integrands only happens at a
// non-integrable point.
constexpr double kFailureFactor = 1.0e4;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

[[noreturn]] void diverged(std::string_view what, double value,
                           double error) {
  throw DivergenceError(std::string(what) +
                        ": quadrature did not converge (value " +
                        std::to_string(value) + ", error estimate " +
                        std::to_string(error) + ")");
}

void check(std::string_view what, double value, double error, double l1,
           double rel_tol) {
  if (!std::isfinite(value) || !std::isfinite(error) ||
      error > kFailureFactor * rel_tol * l1 + 1.0e-300) {
    diverged(what, value, error);
  }
}

boost::math::quadrature::tanh_sinh<double> &tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

} // namespace

QuadratureResult integrate_panels(const Integrand &f,
                                  std::span<const double> breakpoints,
                                  double rel_tol, std::string_view what) {
  struct Segment {
    double a, b, value, error, l1;
    bool operator<(const Segment &o) const { return error < o.error; }
  };
  auto rule = [&f](double a, double b) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = Kronrod::integrate(f, a, b, 0, 0.0, &error, &l1);
    return Segment{a, b, value, error, l1};
  };

  std::priority_queue<Segment> queue;
  std::vector<Segment> done; // too narrow to split further
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) {
      const auto s = rule(breakpoints[i], breakpoints[i + 1]);
      error += s.error;
      l1 += s.l1;
      queue.push(s);
    }
  }
  std::size_t segments = queue.size();
  while (!queue.empty() && error > rel_tol * l1 && segments < kMaxSegments) {
    const Segment s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      done.push_back(s);
      continue;
    }
    const auto left = rule(s.a, mid);
    const auto right = rule(mid, s.b);
    error += left.error + right.error - s.error;
    l1 += left.l1 + right.l1 - s.l1;
    queue.push(left);
    queue.push(right);
    ++segments;
  }

  QuadratureResult total;
  l1 = 0.0;
  for (; !queue.empty(); queue.pop()) {
    done.push_back(queue.top());
  }
  std::sort(done.begin(), done.end(),
            [](const Segment &x, const Segment &y) { return x.a < y.a; });
  for (const auto &s : done) {
    total += {s.value, s.error};
    l1 += s.l1;
  }
  check(what, total.value, total.error, l1, rel_tol);
  return total;
}

QuadratureResult integrate_endpoint_singular(const EndpointIntegrand &f,
                                             double a, double b,
                                             double rel_tol,
                                             std::string_view what) {
  if (!(b > a)) {
    return {};
  }
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = tanh_sinh_rule().integrate(f, a, b, rel_tol, &error, &l1);
  } catch (const std::exception &e) {
    throw DivergenceError(std::string(what) + ": " + e.what());
  }
  check(what, value, error, l1, rel_tol);
  return {value, error};
}

QuadratureResult integrate_box(const PlanarIntegrand &f,
                               std::span<const double> x_breaks,
                               std::span<const double> y_breaks,
                               double rel_tol, std::string_view what) {
  const double inner_tol = 0.1 * rel_tol;
  double inner_error = 0.0;
  auto column = [&](double x) {
    const auto r = integrate_panels([&](double y) { return f({x, y}); },
                                    y_breaks, inner_tol, what);
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };
  auto outer = integrate_panels(column, x_breaks, rel_tol, what);
  const double width = x_breaks.back() - x_breaks.front();
  outer.error += inner_error * width;
  return outer;
}

QuadratureResult integrate_disk(const PlanarIntegrand &f, Point center,
                                std::span<const double> r_breaks,
                                double rel_tol, std::string_view what) {
  const double inner_tol = 0.1 * rel_tol;
  const double angles[] = {0.0, 0.5 * std::numbers::pi, std::numbers::pi,
                           1.5 * std::numbers::pi, 2.0 * std::numbers::pi};
  double inner_error = 0.0;
  auto ring = [&](double r) {
    const auto q = integrate_panels(
        [&](double t) {
          return f({center.x + r * std::cos(t), center.y + r * std::sin(t)});
        },
        angles, inner_tol, what);
    inner_error = std::max(inner_error, r * q.error);
    return r * q.value;
  };
  auto outer = integrate_panels(ring, r_breaks, rel_tol, what);
  outer.error += inner_error * (r_breaks.back() - r_breaks.front());
  return outer;
}

std::vector<double> geometric_breakpoints(double scale, double outer) {
  std::vector<double> breaks{0.0};
  if (!(outer > 0.0)) {
    return breaks;
  }
  double edge = scale > 0.0 ? std::min(scale, outer) : outer;
  while (edge < outer) {
    breaks.push_back(edge);
    edge *= 2.0;
  }
  breaks.push_back(outer);
  return breaks;
}

} // namespace lo2d
