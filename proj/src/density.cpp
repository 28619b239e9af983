#include "lo2d/density.hpp"
#include "lo2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lo2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRadialTol = 1.0e-12;
// |grad rho^alpha|^gamma has cone-shaped kinks at critical points of a
// mixture when gamma is near 1; the nested rule converges there only slowly.
constexpr double kPlanarTol = 1.0e-10;
// rho^c is integrated out to where exp(-kDecayCut) of its peak remains.
constexpr double kDecayCut = 45.0;
// Below this rho^{alpha-1} grad rho is treated as 0 (it underflows anyway).
constexpr double kDensityFloor = 1.0e-290;

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void require_amplitude(double amplitude, double scale) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("density amplitude must be finite and >= 0");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("density width/decay must be finite and > 0");
  }
}

double gaussian_value(const GaussianProfile &g, double r2) {
  return g.amplitude * std::exp(-g.width * r2);
}

// Append `lo + offsets` breakpoints for a component of characteristic length
// `scale` decaying over `cutoff`.
void append_geometric(std::vector<double> &out, double origin, double scale,
                      double cutoff) {
  for (double b : geometric_breakpoints(scale, cutoff)) {
    out.push_back(origin + b);
  }
}

void sort_unique(std::vector<double> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Half-width of the region holding a Gaussian's rho^c mass.
double gaussian_cutoff(const GaussianProfile &g, double c) {
  return std::sqrt(kDecayCut / (c * g.width));
}

} // namespace

// ---------------------------------------------------------------------------
// TabulatedProfile

TabulatedProfile::TabulatedProfile(std::vector<double> radii,
                                   std::vector<double> values, TailModel tail,
                                   double tail_decay, Point center)
    : m_radii(std::move(radii)), m_values(std::move(values)), m_tail(tail),
      m_tail_decay(tail_decay), m_center(center) {
  auto x = m_radii;
  auto y = m_values;
  m_rho = std::make_shared<const Interpolant>(std::move(x), std::move(y));
}

TabulatedProfile TabulatedProfile::create(std::vector<double> radii,
                                          std::vector<double> values,
                                          TailModel tail, Point center) {
  if (radii.size() != values.size()) {
    throw DomainError("tabulated profile: r and rho differ in length");
  }
  if (radii.size() < 4) {
    throw DomainError("tabulated profile needs at least 4 samples");
  }
  if (!(radii.front() >= 0.0)) {
    throw DomainError("tabulated profile: radii must be >= 0");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || !std::isfinite(values[i]) ||
        values[i] < 0.0) {
      throw DomainError("tabulated profile: samples must be finite, rho >= 0");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw DomainError("tabulated profile: radii must be strictly increasing");
    }
  }
  double decay = 0.0;
  const std::size_t n = radii.size();
  if (tail == TailModel::zero) {
    if (values.back() != 0.0) {
      throw DomainError("tabulated profile with zero tail must end at rho = 0");
    }
  } else {
    if (!(values[n - 1] > 0.0) || !(values[n - 2] > values[n - 1])) {
      throw DomainError(
          "exponential tail needs positive, decreasing final samples");
    }
    decay = std::log(values[n - 2] / values[n - 1]) /
            (radii[n - 1] - radii[n - 2]);
  }
  return TabulatedProfile(std::move(radii), std::move(values), tail, decay,
                          center);
}

double TabulatedProfile::value(double r) const {
  if (r <= m_radii.front()) {
    return m_values.front();
  }
  if (r >= m_radii.back()) {
    if (m_tail == TailModel::zero) {
      return 0.0;
    }
    return m_values.back() * std::exp(-m_tail_decay * (r - m_radii.back()));
  }
  return std::max(0.0, (*m_rho)(r));
}

std::function<double(double)>
TabulatedProfile::power_derivative(double alpha) const {
  std::vector<double> x = m_radii;
  std::vector<double> y(m_values.size());
  std::transform(m_values.begin(), m_values.end(), y.begin(),
                 [alpha](double v) { return std::pow(v, alpha); });
  const double r_first = m_radii.front();
  const double r_last = m_radii.back();
  const double tail_amp = y.back();
  const double tail_rate =
      m_tail == TailModel::exponential ? alpha * m_tail_decay : 0.0;
  auto interp = std::make_shared<const Interpolant>(std::move(x), std::move(y));
  return [interp, r_first, r_last, tail_amp, tail_rate](double r) {
    if (r <= r_first) {
      return 0.0;
    }
    if (r >= r_last) {
      return -tail_rate * tail_amp * std::exp(-tail_rate * (r - r_last));
    }
    return interp->prime(r);
  };
}

// ---------------------------------------------------------------------------
// DensityProfile

DensityProfile DensityProfile::gaussian(double amplitude, double width,
                                        Point center) {
  require_amplitude(amplitude, width);
  return DensityProfile(GaussianProfile{amplitude, width, center});
}

DensityProfile DensityProfile::exponential(double amplitude, double decay,
                                           Point center) {
  require_amplitude(amplitude, decay);
  return DensityProfile(ExponentialProfile{amplitude, decay, center});
}

DensityProfile DensityProfile::tabulated(std::vector<double> radii,
                                         std::vector<double> values,
                                         TailModel tail, Point center) {
  return DensityProfile(TabulatedProfile::create(std::move(radii),
                                                 std::move(values), tail,
                                                 center));
}

DensityProfile DensityProfile::mixture(std::vector<GaussianProfile> components) {
  for (const auto &c : components) {
    require_amplitude(c.amplitude, c.width);
  }
  return DensityProfile(MixtureProfile{std::move(components)});
}

std::string_view DensityProfile::kind_name() const {
  return std::visit(overloaded{
                        [](const GaussianProfile &) { return "gaussian"; },
                        [](const ExponentialProfile &) { return "exponential"; },
                        [](const TabulatedProfile &) { return "tabulated"; },
                        [](const MixtureProfile &) { return "mixture"; },
                    },
                    m_variant);
}

Point DensityProfile::center() const {
  return std::visit(overloaded{
                        [](const GaussianProfile &g) { return g.center; },
                        [](const ExponentialProfile &e) { return e.center; },
                        [](const TabulatedProfile &t) { return t.center(); },
                        [](const MixtureProfile &m) {
                          return m.components.empty()
                                     ? Point{}
                                     : m.components.front().center;
                        },
                    },
                    m_variant);
}

bool DensityProfile::is_radial() const {
  const auto *m = std::get_if<MixtureProfile>(&m_variant);
  if (m == nullptr || m->components.empty()) {
    return true;
  }
  const Point c = m->components.front().center;
  return std::all_of(m->components.begin(), m->components.end(),
                     [c](const GaussianProfile &g) { return g.center == c; });
}

bool DensityProfile::is_zero() const {
  return std::visit(
      overloaded{
          [](const GaussianProfile &g) { return g.amplitude == 0.0; },
          [](const ExponentialProfile &e) { return e.amplitude == 0.0; },
          [](const TabulatedProfile &t) {
            return std::all_of(t.values().begin(), t.values().end(),
                               [](double v) { return v == 0.0; });
          },
          [](const MixtureProfile &m) {
            return std::all_of(
                m.components.begin(), m.components.end(),
                [](const GaussianProfile &g) { return g.amplitude == 0.0; });
          },
      },
      m_variant);
}

double DensityProfile::value(Point x) const {
  return std::visit(
      overloaded{
          [x](const GaussianProfile &g) {
            const Point d = x - g.center;
            return gaussian_value(g, d.x * d.x + d.y * d.y);
          },
          [x](const ExponentialProfile &e) {
            return e.amplitude * std::exp(-e.decay * distance(x, e.center));
          },
          [x](const TabulatedProfile &t) {
            return t.value(distance(x, t.center()));
          },
          [x](const MixtureProfile &m) {
            double sum = 0.0;
            for (const auto &g : m.components) {
              const Point d = x - g.center;
              sum += gaussian_value(g, d.x * d.x + d.y * d.y);
            }
            return sum;
          },
      },
      m_variant);
}

double DensityProfile::radial_value(double r) const {
  return std::visit(
      overloaded{
          [r](const GaussianProfile &g) { return gaussian_value(g, r * r); },
          [r](const ExponentialProfile &e) {
            return e.amplitude * std::exp(-e.decay * r);
          },
          [r](const TabulatedProfile &t) { return t.value(r); },
          [r](const MixtureProfile &m) {
            double sum = 0.0;
            for (const auto &g : m.components) {
              sum += gaussian_value(g, r * r);
            }
            return sum;
          },
      },
      m_variant);
}

std::function<double(double)>
DensityProfile::radial_power_derivative(double alpha) const {
  return std::visit(
      overloaded{
          [alpha](const GaussianProfile &g) -> std::function<double(double)> {
            if (g.amplitude == 0.0) {
              return [](double) { return 0.0; };
            }
            const double log_amp = std::log(g.amplitude);
            const double rate = g.width;
            return [=](double r) {
              return -2.0 * alpha * rate * r *
                     std::exp(alpha * (log_amp - rate * r * r));
            };
          },
          [alpha](const ExponentialProfile &e) -> std::function<double(double)> {
            if (e.amplitude == 0.0) {
              return [](double) { return 0.0; };
            }
            const double log_amp = std::log(e.amplitude);
            const double rate = e.decay;
            return [=](double r) {
              return -alpha * rate * std::exp(alpha * (log_amp - rate * r));
            };
          },
          [alpha](const TabulatedProfile &t) {
            return t.power_derivative(alpha);
          },
          [alpha](const MixtureProfile &m) -> std::function<double(double)> {
            return [components = m.components, alpha](double r) {
              double rho = 0.0;
              double slope = 0.0;
              for (const auto &g : components) {
                const double v = gaussian_value(g, r * r);
                rho += v;
                slope -= 2.0 * g.width * r * v;
              }
              if (rho < kDensityFloor) {
                return 0.0;
              }
              return alpha * std::pow(rho, alpha - 1.0) * slope;
            };
          },
      },
      m_variant);
}

std::function<Point(Point)>
DensityProfile::power_gradient_field(double alpha) const {
  if (const auto *m = std::get_if<MixtureProfile>(&m_variant)) {
    return [components = m->components, alpha](Point x) {
      double rho = 0.0;
      Point grad{};
      for (const auto &g : components) {
        const Point d = x - g.center;
        const double v = gaussian_value(g, d.x * d.x + d.y * d.y);
        rho += v;
        grad = grad + (-2.0 * g.width * v) * d;
      }
      if (rho < kDensityFloor) {
        return Point{};
      }
      return (alpha * std::pow(rho, alpha - 1.0)) * grad;
    };
  }
  auto radial = radial_power_derivative(alpha);
  const Point c = center();
  return [radial, c](Point x) {
    const Point d = x - c;
    const double r = norm(d);
    if (r == 0.0) {
      return Point{};
    }
    return (radial(r) / r) * d;
  };
}

std::vector<double> DensityProfile::radial_breakpoints(double decay_power) const {
  return std::visit(
      overloaded{
          [decay_power](const GaussianProfile &g) {
            const double scale = 0.25 / std::sqrt(decay_power * g.width);
            return geometric_breakpoints(scale, gaussian_cutoff(g, decay_power));
          },
          [decay_power](const ExponentialProfile &e) {
            const double scale = 0.25 / (decay_power * e.decay);
            return geometric_breakpoints(scale,
                                         kDecayCut / (decay_power * e.decay));
          },
          [decay_power](const TabulatedProfile &t) {
            std::vector<double> breaks{0.0};
            breaks.insert(breaks.end(), t.radii().begin(), t.radii().end());
            if (t.tail() == TailModel::exponential) {
              const double rate = decay_power * t.tail_decay();
              const double r_last = t.radii().back();
              auto tail = geometric_breakpoints(0.25 / rate, kDecayCut / rate);
              for (double b : tail) {
                breaks.push_back(r_last + b);
              }
            }
            sort_unique(breaks);
            return breaks;
          },
          [decay_power](const MixtureProfile &m) {
            std::vector<double> breaks{0.0};
            for (const auto &g : m.components) {
              append_geometric(breaks, 0.0,
                               0.25 / std::sqrt(decay_power * g.width),
                               gaussian_cutoff(g, decay_power));
            }
            sort_unique(breaks);
            return breaks;
          },
      },
      m_variant);
}

std::vector<double> DensityProfile::axis_breakpoints(double decay_power,
                                                     bool x_axis) const {
  std::vector<double> breaks;
  auto add_component = [&](double origin, double scale, double cutoff) {
    for (double b : geometric_breakpoints(scale, cutoff)) {
      breaks.push_back(origin + b);
      breaks.push_back(origin - b);
    }
  };
  if (const auto *m = std::get_if<MixtureProfile>(&m_variant)) {
    for (const auto &g : m->components) {
      add_component(x_axis ? g.center.x : g.center.y,
                    0.25 / std::sqrt(decay_power * g.width),
                    gaussian_cutoff(g, decay_power));
    }
  } else {
    const auto radial = radial_breakpoints(decay_power);
    const double origin = x_axis ? center().x : center().y;
    for (double b : radial) {
      breaks.push_back(origin + b);
      breaks.push_back(origin - b);
    }
  }
  if (breaks.empty()) {
    breaks = {0.0, 0.0};
  }
  sort_unique(breaks);
  return breaks;
}

double DensityProfile::mass() const {
  return std::visit(
      overloaded{
          [](const GaussianProfile &g) {
            return std::numbers::pi * g.amplitude / g.width;
          },
          [](const ExponentialProfile &e) {
            return kTwoPi * e.amplitude / (e.decay * e.decay);
          },
          [this](const TabulatedProfile &t) {
            const auto breaks = radial_breakpoints(1.0);
            return integrate_panels(
                       [&t](double r) { return kTwoPi * t.value(r) * r; },
                       breaks, 1.0e-13, "mass of tabulated profile")
                .value;
          },
          [](const MixtureProfile &m) {
            double total = 0.0;
            for (const auto &g : m.components) {
              total += std::numbers::pi * g.amplitude / g.width;
            }
            return total;
          },
      },
      m_variant);
}

DensityProfile DensityProfile::scaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("scaling factor lambda must be positive, got " +
                      std::to_string(lambda));
  }
  const double l2 = lambda * lambda;
  const double inv = 1.0 / lambda;
  auto scale_gaussian = [=](const GaussianProfile &g) {
    return GaussianProfile{l2 * g.amplitude, l2 * g.width, inv * g.center};
  };
  return std::visit(
      overloaded{
          [&](const GaussianProfile &g) {
            return DensityProfile(scale_gaussian(g));
          },
          [&](const ExponentialProfile &e) {
            return DensityProfile(ExponentialProfile{
                l2 * e.amplitude, lambda * e.decay, inv * e.center});
          },
          [&](const TabulatedProfile &t) {
            std::vector<double> r(t.radii().size());
            std::vector<double> v(t.values().size());
            std::transform(t.radii().begin(), t.radii().end(), r.begin(),
                           [inv](double x) { return inv * x; });
            std::transform(t.values().begin(), t.values().end(), v.begin(),
                           [l2](double x) { return l2 * x; });
            return DensityProfile(TabulatedProfile::create(
                std::move(r), std::move(v), t.tail(), inv * t.center()));
          },
          [&](const MixtureProfile &m) {
            MixtureProfile out;
            for (const auto &g : m.components) {
              out.components.push_back(scale_gaussian(g));
            }
            return DensityProfile(std::move(out));
          },
      },
      m_variant);
}

// ---------------------------------------------------------------------------
// Functionals

QuadratureResult evaluate_L(const DensityProfile &rho) {
  if (rho.is_zero()) {
    return {};
  }
  if (rho.is_radial()) {
    const auto breaks = rho.radial_breakpoints(1.5);
    return integrate_panels(
        [&rho](double r) {
          const double v = rho.radial_value(r);
          return kTwoPi * v * std::sqrt(v) * r;
        },
        breaks, kRadialTol, "L(rho) = Int rho^{3/2}");
  }
  const auto xb = rho.axis_breakpoints(1.5, true);
  const auto yb = rho.axis_breakpoints(1.5, false);
  return integrate_box(
      [&rho](Point x) {
        const double v = rho.value(x);
        return v * std::sqrt(v);
      },
      xb, yb, kPlanarTol, "L(rho) = Int rho^{3/2}");
}

QuadratureResult evaluate_G(const DensityProfile &rho,
                            const BoundParameters &params) {
  if (rho.is_zero()) {
    return {};
  }
  const double gamma = params.gamma();
  const double alpha = params.alpha();
  const double decay = alpha * gamma;
  if (rho.is_radial()) {
    const auto slope = rho.radial_power_derivative(alpha);
    const auto breaks = rho.radial_breakpoints(decay);
    return integrate_panels(
        [&](double r) { return kTwoPi * std::pow(std::abs(slope(r)), gamma) * r; },
        breaks, kRadialTol, "G(rho) = Int |grad rho^alpha|^gamma");
  }
  const auto field = rho.power_gradient_field(alpha);
  const auto xb = rho.axis_breakpoints(decay, true);
  const auto yb = rho.axis_breakpoints(decay, false);
  return integrate_box(
      [&](Point x) { return std::pow(norm(field(x)), gamma); }, xb, yb,
      kPlanarTol, "G(rho) = Int |grad rho^alpha|^gamma");
}

FunctionalValue evaluate_functionals(const DensityProfile &rho,
                                     const BoundParameters &params) {
  const auto l = evaluate_L(rho);
  const auto g = evaluate_G(rho, params);
  return {l.value, g.value, params.gamma(), l.error + g.error};
}

DensityProfile scale_density(const DensityProfile &rho, double lambda) {
  return rho.scaled(lambda);
}

double kinetic_functional(const DensityProfile &rho,
                          const BoundParameters &params, double a_tilde_sq,
                          double b_tilde_sq) {
  const auto f = evaluate_functionals(rho, params);
  return a_tilde_sq * f.G + b_tilde_sq * f.L;
}

double gaussian_L(double amplitude, double width) {
  require_amplitude(amplitude, width);
  return std::pow(amplitude, 1.5) * kTwoPi / (3.0 * width);
}

double gaussian_G(double amplitude, double width,
                  const BoundParameters &params) {
  require_amplitude(amplitude, width);
  const double g = params.gamma();
  const double a = params.alpha();
  return std::pow(amplitude, a * g) * std::numbers::pi * std::exp2(g) *
         std::pow(width * a, 0.5 * g - 1.0) * std::tgamma(1.0 + 0.5 * g) *
         std::pow(g, -0.5 * g - 1.0);
}

double gaussian_G_over_L(double particles, const BoundParameters &params) {
  if (!(particles > 0.0)) {
    throw DomainError("particle number must be positive");
  }
  const double g = params.gamma();
  return 3.0 * std::pow(std::numbers::sqrt2 / g, g) *
         std::pow(std::numbers::pi / particles, 0.5 * g) *
         std::tgamma(1.0 + 0.5 * g) * std::pow(3.0 - g, 0.5 * g - 1.0);
}

} // namespace lo2d
