// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include "lo2d/bound_constants.hpp"
#include "lo2d/cli.hpp"
#include "lo2d/coulomb.hpp"
#include "lo2d/density.hpp"
#include "lo2d/manybody.hpp"
#include "lo2d/stability.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lo2d;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome c1_beta() {
  const double b = beta_constant();
  return {std::abs(b - 5.9045) <= 1e-4, fmt("beta = %.10f", b)};
}

Outcome c2_gamma_two() {
  double worst = 0.0;
  for (double e : {0.01, 0.1, 1.0, 10.0}) {
    const double v = a_tilde_squared(derive_parameters(2.0, e)) * beta_constant() * e;
    worst = std::max(worst, rel(v, 4.0));
  }
  return {worst <= 1e-9, fmt("max rel dev %.3e", worst)};
}

Outcome c3_gamma_one() {
  double worst = 0.0;
  for (double e : {0.1, 1.0, 10.0}) {
    worst = std::max(worst, std::abs(a_tilde_squared(derive_parameters(1.0 + 1e-4, e)) -
                                     std::numbers::sqrt2));
  }
  return {worst <= 5e-3, fmt("max |a~^2 - sqrt2| = %.3e", worst)};
}

Outcome c4_proof_path() {
  double worst = 0.0;
  for (double g : {1.2, 1.6, 2.0, 2.4, 2.8}) {
    for (double e : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      const auto p = derive_parameters(g, e);
      const auto m = maximize_h(g, a_from_a_tilde(a_tilde_squared(p), p), b_tilde_squared(e));
      worst = std::max(worst, std::abs(m.sigma_star - 1.0 / (1.0 + e)));
      worst = std::max(worst, std::abs(m.h_max - 1.0));
    }
  }
  return {worst <= 1e-9, fmt("max deviation %.3e", worst)};
}

Outcome c5_gaussian() {
  double worst = 0.0;
  for (double c : {0.1, 1.0, 10.0}) {
    for (double a : {0.2, 1.0, 5.0}) {
      for (double g : {1.2, 1.5, 2.0, 2.5}) {
        const auto p = derive_parameters(g, 1.0);
        const auto f = evaluate_functionals(DensityProfile::gaussian(c, a), p);
        worst = std::max(worst, rel(f.L, gaussian_L(c, a)));
        worst = std::max(worst, rel(f.G, gaussian_G(c, a, p)));
      }
    }
  }
  double ratio_dev = 0.0;
  double slope_dev = 0.0;
  for (double g : {1.2, 1.5, 2.0, 2.5}) {
    const auto p = derive_parameters(g, 1.0);
    std::vector<double> xs, ys;
    for (double n : {1.0, 10.0, 100.0, 1000.0}) {
      const auto f = evaluate_functionals(DensityProfile::gaussian(n / kPi, 1.0), p);
      ratio_dev = std::max(ratio_dev, rel(f.G / f.L, gaussian_G_over_L(n, p)));
      xs.push_back(std::log(n));
      ys.push_back(std::log(f.G / f.L));
    }
    // least-squares slope
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    slope_dev = std::max(slope_dev, std::abs(slope + 0.5 * g));
  }
  std::ostringstream d;
  d << "L/G rel " << fmt("%.2e", worst) << ", G/L rel " << fmt("%.2e", ratio_dev)
    << ", slope dev " << fmt("%.2e", slope_dev);
  return {worst <= 1e-8 && ratio_dev <= 1e-8 && slope_dev <= 1e-3, d.str()};
}

Outcome c6_scaling() {
  std::vector<double> r, v;
  for (int i = 0; i <= 60; ++i) {
    r.push_back(0.05 * i);
    v.push_back(std::exp(-0.8 * r.back() * r.back()) * (1.0 + 0.3 * std::cos(r.back())));
  }
  const std::vector<DensityProfile> corpus = {
      DensityProfile::gaussian(1.0, 1.0), DensityProfile::gaussian(3.0, 0.4),
      DensityProfile::tabulated(r, v, TailModel::exponential)};
  double worst = 0.0;
  for (double g : {1.5, 2.0, 2.5}) {
    const auto p = derive_parameters(g, 1.0);
    const double a2 = a_tilde_squared(p);
    const double b2 = b_tilde_squared(1.0);
    for (const auto &rho : corpus) {
      const double k = kinetic_functional(rho, p, a2, b2);
      for (double lambda : {0.5, 2.0, 10.0}) {
        worst = std::max(worst, rel(kinetic_functional(scale_density(rho, lambda), p, a2, b2), lambda * k));
      }
    }
  }
  return {worst <= 1e-6, fmt("max rel dev %.3e", worst)};
}

Outcome c7_direct() {
  double worst = 0.0;
  double worst_sigma = 0.0;
  std::uint64_t seed = 2024;
  for (double n : {1.0, 2.0, 5.0}) {
    for (double a : {0.5, 1.0, 3.0}) {
      const auto rho = DensityProfile::gaussian(n * a / kPi, a);
      const double d = direct_term(rho);
      worst = std::max(worst, rel(d, 0.5 * n * n * std::sqrt(0.5 * kPi * a)));
      const auto mc = direct_term_monte_carlo(rho, 1'000'000, seed++);
      worst_sigma = std::max(worst_sigma, std::abs(mc.mean - d) / mc.standard_error);
    }
  }
  std::ostringstream s;
  s << "closed-form rel " << fmt("%.2e", worst) << ", MC max " << fmt("%.2f", worst_sigma) << " sigma";
  return {worst <= 1e-5 && worst_sigma <= 3.0, s.str()};
}

Outcome c8_inequalities() {
  // (a) norm comparison
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> power(1e-3, 6.0);
  long fails_a = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double x = coord(gen), y = coord(gen), p = power(gen);
    const double lhs = std::pow(std::abs(x), p) + std::pow(std::abs(y), p);
    if (lhs > sharp_constant_c(p) * std::pow(x * x + y * y, 0.5 * p) * (1.0 + 1e-12)) {
      ++fails_a;
    }
  }
  for (double p : {0.3, 1.0, 1.7, 2.0, 2.5, 4.0}) {
    const double x = 1.3;
    const double lhs = p <= 2.0 ? 2.0 * std::pow(x, p) : std::pow(x, p);
    const double rhs = sharp_constant_c(p) * std::pow(p <= 2.0 ? 2.0 * x * x : x * x, 0.5 * p);
    fails_a += rel(lhs, rhs) > 1e-12 ? 1 : 0;
  }

  // (b) uncertainty principles on the smooth radial corpus
  std::vector<double> r, v;
  for (int i = 0; i <= 50; ++i) {
    r.push_back(0.04 * i);
    v.push_back(std::pow(1.0 - 0.0004 * i * i, 3));
  }
  const std::vector<DensityProfile> smooth = {
      DensityProfile::gaussian(1.0, 1.0), DensityProfile::gaussian(0.1, 0.3),
      DensityProfile::gaussian(8.0, 5.0), DensityProfile::exponential(1.0, 1.0),
      DensityProfile::tabulated(r, v, TailModel::zero)};
  long fails_b = 0;
  long checks_b = 0;
  for (double g : {1.2, 1.5, 2.0, 2.5}) {
    const auto p = derive_parameters(g, 1.0);
    for (const auto &rho : smooth) {
      for (double radius : {0.5, 1.0, 2.0}) {
        fails_b += verify_uncertainty_lemma(as_radial_function(rho), {radius, {}}, p).holds ? 0 : 1;
        for (double a : {0.3, 1.0, 3.0}) {
          fails_b += verify_coulomb_uncertainty(rho, {radius, {}}, a, 1.0 / a, p).holds ? 0 : 1;
          checks_b += 1;
        }
        checks_b += 1;
      }
    }
  }

  // (c) xi >= 0 whenever z <= z_max
  auto corpus = smooth;
  corpus.push_back(DensityProfile::mixture({{0.6, 1.0, {-1.0, 0.0}}, {0.6, 1.0, {1.0, 0.0}}}));
  corpus.push_back(DensityProfile::gaussian(2.0, 2.0, {0.5, 0.3}));
  const std::vector<MolecularConfig> configs = {
      MolecularConfig::create(1.0, {{0.0, 0.0}}),
      MolecularConfig::create(1.0, {{-1.0, 0.0}, {1.0, 0.0}}),
      MolecularConfig::create(0.5, {{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}}),
  };
  long fails_c = 0;
  long skipped_c = 0;
  for (double g : {1.5, 2.0, 2.5}) {
    for (double e : {0.5, 1.0, 4.0}) {
      const auto p = derive_parameters(g, e);
      const auto rep = empirical_stability_sweep(corpus, configs, p, a_tilde_squared(p), b_tilde_squared(e));
      fails_c += static_cast<long>(rep.violations);
      skipped_c += static_cast<long>(rep.skipped);
      fails_c += rep.verdict.stable ? 0 : 1;
    }
  }

  // (d) main bound on Gaussian products
  std::vector<WaveFunctionSpec> specs;
  for (int n : {2, 3, 5, 10}) {
    specs.push_back(WaveFunctionSpec::gaussian_product(n, 1.0));
  }
  const auto table = tightness_scan(specs, {1.001, 1.4, 1.8, 2.0, 2.4, 2.8},
                                    {0.05, 0.2, 0.5, 1.0, 2.0, 5.0});
  const long fails_d = static_cast<long>(table.unconfirmed + table.skipped);

  std::ostringstream d;
  d << "(a) " << fails_a << " fail, (b) " << fails_b << "/" << checks_b << " fail, (c) " << fails_c
    << " fail " << skipped_c << " skipped, (d) " << fails_d << "/" << table.rows.size() << " fail";
  return {fails_a == 0 && fails_b == 0 && fails_c == 0 && skipped_c == 0 && fails_d == 0, d.str()};
}

Outcome c9_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lo2d_acceptance";
  fs::create_directories(dir);
  const auto cfg = (dir / "scan.json").string();
  std::ofstream(cfg) << R"({
    "specs": [
      {"kind": "gaussian-product", "N": 2, "A": 1.0},
      {"kind": "gaussian-product", "N": 5, "A": 0.5},
      {"kind": "shifted-gaussian-mixture", "N": 3, "A": 1.0, "centers": [[-1, 0], [1, 0]]},
      {"kind": "shifted-gaussian-mixture", "N": 4, "A": 2.0, "centers": [[0, 0], [1.5, 1.5], [-2, 0.5]]}
    ],
    "gamma": [1.5, 2.0, 2.5],
    "epsilon": [0.5, 1.0, 2.0],
    "samples": 200000
  })";
  auto slurp = [](const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::vector<std::string> outputs;
  bool exit_ok = true;
  int k = 0;
  for (const char *jobs : {"1", "2", "4", "1", "8"}) {
    const auto out = (dir / ("scan" + std::to_string(k++) + ".csv")).string();
    exit_ok = exit_ok && cli::run({"scan", "--config", cfg, "--seed", "12345", "--jobs", jobs, "--out", out}) == 0;
    outputs.push_back(slurp(out));
  }
  fs::remove_all(dir);
  bool same = !outputs[0].empty();
  for (const auto &o : outputs) {
    same = same && o == outputs[0];
  }
  return {exit_ok && same, std::to_string(outputs.size()) + " runs at jobs {1,2,4,1,8}, " +
                               std::to_string(outputs[0].size()) + " bytes, " +
                               (same ? "identical" : "DIFFER")};
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"beta constant", c1_beta},
      {"gamma=2 reduction", c2_gamma_two},
      {"gamma->1+ limit", c3_gamma_one},
      {"proof-path consistency", c4_proof_path},
      {"Gaussian closed forms", c5_gaussian},
      {"scaling law", c6_scaling},
      {"direct-term oracles", c7_direct},
      {"inequality suites", c8_inequalities},
      {"scan determinism", c9_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
