#pragma once

// Reproducible Monte Carlo. Samples are grouped in fixed blocks; block b of
// stream s under seed k always draws from the same mt19937_64 state, so the
// estimate does not depend on how blocks are spread over threads. Block
// statistics are merged in block order in both execution modes.

#include "lo2d/density.hpp"
#include "lo2d/execution.hpp"
#include "lo2d/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lo2d {

inline constexpr std::uint64_t kMonteCarloBlock = 4096;

class BlockRng {
public:
  BlockRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block);

  // Uniform on the open interval (0, 1), built from the top 53 bits so the
  // sequence is identical on every standard library.
  double uniform() {
    return (static_cast<double>(m_engine() >> 11) + 0.5) * 0x1.0p-53;
  }
  // Two independent standard normals (Box-Muller).
  Point normal_pair();

private:
  std::mt19937_64 m_engine;
};

// Draws points from rho / mass(rho). Tabulated profiles are not sampleable.
class DensitySampler {
public:
  explicit DensitySampler(const DensityProfile &rho);

  Point operator()(BlockRng &rng) const;
  double mass() const { return m_mass; }

private:
  struct Component {
    int kind; // 0 gaussian, 1 exponential
    double scale;
    Point center;
  };
  std::vector<Component> m_components;
  std::vector<double> m_cumulative; // cumulative mass fractions
  double m_mass{0.0};
};

struct RunningStats {
  std::uint64_t count{0};
  double mean{0.0};
  double m2{0.0};

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  // Chan et al. pairwise combination.
  void merge(const RunningStats &o) {
    if (o.count == 0) {
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / n;
    m2 += o.m2 + d * d * static_cast<double>(count) *
                     static_cast<double>(o.count) / n;
    count += o.count;
  }

  double standard_error() const {
    if (count < 2) {
      return 0.0;
    }
    const double n = static_cast<double>(count);
    return std::sqrt(m2 / (n - 1.0) / n);
  }
};

// Mean of sample(rng) over `samples` draws. `sample` must be callable
// concurrently from several threads.
template <class SampleFn>
RunningStats monte_carlo_mean(std::uint64_t samples, std::uint64_t seed,
                              std::uint64_t stream, Execution exec,
                              const SampleFn &sample) {
  const std::uint64_t blocks =
      (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<RunningStats> partial(blocks);
  auto run_block = [&](std::uint64_t b) {
    BlockRng rng(seed, stream, b);
    const std::uint64_t begin = b * kMonteCarloBlock;
    const std::uint64_t end = std::min(samples, begin + kMonteCarloBlock);
    RunningStats stats;
    for (std::uint64_t i = begin; i < end; ++i) {
      stats.add(sample(rng));
    }
    partial[b] = stats;
  };
  if (exec == Execution::parallel) {
    const auto n = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < n; ++b) {
      run_block(static_cast<std::uint64_t>(b));
    }
  } else {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      run_block(b);
    }
  }
  RunningStats total;
  for (const auto &p : partial) {
    total.merge(p);
  }
  return total;
}

// Stream id for cell `index` of a run seeded with `seed` (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace lo2d
