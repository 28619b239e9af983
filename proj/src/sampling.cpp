#include "lo2d/sampling.hpp"
#include "lo2d/errors.hpp"

#include <algorithm>
#include <numbers>

namespace lo2d {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t block) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed),   hi(seed),  lo(stream),
                    hi(stream), lo(block), hi(block)};
  return std::mt19937_64(seq);
}

} // namespace

BlockRng::BlockRng(std::uint64_t seed, std::uint64_t stream,
                   std::uint64_t block)
    : m_engine(seeded_engine(seed, stream, block)) {}

Point BlockRng::normal_pair() {
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

DensitySampler::DensitySampler(const DensityProfile &rho) {
  const auto &v = rho.variant();
  std::vector<double> masses;
  if (const auto *g = std::get_if<GaussianProfile>(&v)) {
    m_components.push_back({0, std::sqrt(0.5 / g->width), g->center});
    masses.push_back(rho.mass());
  } else if (const auto *e = std::get_if<ExponentialProfile>(&v)) {
    m_components.push_back({1, 1.0 / e->decay, e->center});
    masses.push_back(rho.mass());
  } else if (const auto *m = std::get_if<MixtureProfile>(&v)) {
    for (const auto &c : m->components) {
      m_components.push_back({0, std::sqrt(0.5 / c.width), c.center});
      masses.push_back(std::numbers::pi * c.amplitude / c.width);
    }
  } else {
    throw DomainError("Monte Carlo sampling is not available for " +
                      std::string(rho.kind_name()) + " profiles");
  }
  for (double m : masses) {
    m_mass += m;
  }
  if (!(m_mass > 0.0)) {
    throw DomainError("cannot sample a density of zero mass");
  }
  double running = 0.0;
  for (double m : masses) {
    running += m;
    m_cumulative.push_back(running / m_mass);
  }
  m_cumulative.back() = 1.0;
}

Point DensitySampler::operator()(BlockRng &rng) const {
  std::size_t k = 0;
  if (m_components.size() > 1) {
    const double u = rng.uniform();
    k = static_cast<std::size_t>(
        std::upper_bound(m_cumulative.begin(), m_cumulative.end(), u) -
        m_cumulative.begin());
    k = std::min(k, m_components.size() - 1);
  }
  const auto &c = m_components[k];
  if (c.kind == 0) {
    return c.center + c.scale * rng.normal_pair();
  }
  // radial density r exp(-r/scale): Gamma(2, scale)
  const double r = -c.scale * (std::log(rng.uniform()) + std::log(rng.uniform()));
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return c.center + Point{r * std::cos(angle), r * std::sin(angle)};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace lo2d
