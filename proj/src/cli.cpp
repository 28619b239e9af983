#include "lo2d/cli.hpp"

#include "lo2d/bound_constants.hpp"
#include "lo2d/density.hpp"
#include "lo2d/errors.hpp"
#include "lo2d/execution.hpp"
#include "lo2d/io.hpp"
#include "lo2d/manybody.hpp"
#include "lo2d/sampling.hpp"
#include "lo2d/stability.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace lo2d::cli {

namespace {

using io::Json;

struct Options {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  int jobs{0};
};

struct Context {
  Options opts;
  Json config = Json::object();
  std::uint64_t seed{0};
  Execution exec{Execution::parallel};
};

struct Output {
  std::string text;
  int code{kOk};
};

bool wants_json(const Context &ctx, bool json_by_default) {
  if (ctx.opts.format.empty()) {
    return json_by_default;
  }
  return ctx.opts.format == "json";
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- constants

Output run_constants(const Context &ctx) {
  const auto gammas =
      io::number_list(ctx.config, "gamma", {1.25, 1.5, 2.0, 2.5, 2.75});
  const auto epsilons =
      io::number_list(ctx.config, "epsilon", {0.1, 0.5, 1.0, 2.0, 10.0});
  struct Row {
    BoundParameters params;
    double c_gamma, c_delta, beta, b_sq, a_sq;
  };
  std::vector<Row> rows;
  for (double g : gammas) {
    for (double e : epsilons) {
      const auto p = derive_parameters(g, e);
      rows.push_back({p, sharp_constant_c(p.gamma()), sharp_constant_c(p.delta()),
                      beta_constant(), b_tilde_squared(e), a_tilde_squared(p)});
    }
  }
  std::ostringstream out;
  if (wants_json(ctx, false)) {
    Json arr = Json::array();
    for (const auto &r : rows) {
      arr.push_back({{"gamma", r.params.gamma()},
                     {"epsilon", r.params.epsilon()},
                     {"alpha", r.params.alpha()},
                     {"delta", r.params.delta()},
                     {"C_gamma", r.c_gamma},
                     {"C_delta", r.c_delta},
                     {"beta", r.beta},
                     {"b_tilde_sq", r.b_sq},
                     {"a_tilde_sq", r.a_sq}});
    }
    out << dump(arr);
  } else {
    io::CsvWriter csv(out, {"gamma", "epsilon", "alpha", "delta", "C_gamma",
                            "C_delta", "beta", "b_tilde_sq", "a_tilde_sq"});
    for (const auto &r : rows) {
      csv.field(r.params.gamma())
          .field(r.params.epsilon())
          .field(r.params.alpha())
          .field(r.params.delta())
          .field(r.c_gamma)
          .field(r.c_delta)
          .field(r.beta)
          .field(r.b_sq)
          .field(r.a_sq);
      csv.end_row();
    }
  }
  return {out.str(), kOk};
}

// --------------------------------------------------------- gaussian-example

double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

Output run_gaussian_example(const Context &ctx) {
  const auto ns =
      io::number_list(ctx.config, "N", {1.0, 2.0, 5.0, 10.0, 100.0, 1000.0});
  const auto gammas = io::number_list(ctx.config, "gamma", {1.2, 1.5, 2.0, 2.5});
  const double width = io::number(ctx.config, "A", 1.0);
  if (!(width > 0.0)) {
    throw ConfigError("\"A\" must be positive");
  }
  for (double n : ns) {
    if (!(n > 0.0)) {
      throw ConfigError("every N must be positive");
    }
  }
  for (double g : gammas) {
    derive_parameters(g, 1.0);
  }
  struct Row {
    double n, gamma, l_closed, l_quad, g_closed, g_quad, gl_formula, gl_quad,
        worst;
  };
  std::vector<Row> rows(ns.size() * gammas.size());
  const auto cells = static_cast<std::int64_t>(rows.size());
  std::vector<std::string> errors(rows.size());
  auto fill = [&](std::int64_t k) {
    const double n = ns[static_cast<std::size_t>(k) / gammas.size()];
    const double g = gammas[static_cast<std::size_t>(k) % gammas.size()];
    const auto params = derive_parameters(g, 1.0);
    const double amp = n * width / std::numbers::pi;
    const auto rho = DensityProfile::gaussian(amp, width);
    Row r{n, g, gaussian_L(amp, width), 0.0, gaussian_G(amp, width, params),
          0.0, gaussian_G_over_L(n, params), 0.0, 0.0};
    try {
      r.l_quad = evaluate_L(rho).value;
      r.g_quad = evaluate_G(rho, params).value;
    } catch (const DivergenceError &e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
    r.gl_quad = r.g_quad / r.l_quad;
    r.worst = std::max({rel_diff(r.l_closed, r.l_quad),
                        rel_diff(r.g_closed, r.g_quad),
                        rel_diff(r.gl_formula, r.gl_quad)});
    rows[static_cast<std::size_t>(k)] = r;
  };
  if (ctx.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < cells; ++k) {
      fill(k);
    }
  } else {
    for (std::int64_t k = 0; k < cells; ++k) {
      fill(k);
    }
  }
  for (const auto &e : errors) {
    if (!e.empty()) {
      throw DivergenceError(e);
    }
  }

  int code = kOk;
  std::ostringstream out;
  const std::vector<std::string> header = {
      "N",      "gamma",      "L_closed",         "L_quad",
      "G_closed", "G_quad",   "G_over_L_closed",  "G_over_L_quad",
      "max_rel_diff"};
  if (wants_json(ctx, false)) {
    Json arr = Json::array();
    for (const auto &r : rows) {
      arr.push_back({{"N", r.n},
                     {"gamma", r.gamma},
                     {"L_closed", r.l_closed},
                     {"L_quad", r.l_quad},
                     {"G_closed", r.g_closed},
                     {"G_quad", r.g_quad},
                     {"G_over_L_closed", r.gl_formula},
                     {"G_over_L_quad", r.gl_quad},
                     {"max_rel_diff", r.worst}});
    }
    out << dump(arr);
  } else {
    io::CsvWriter csv(out, header);
    for (const auto &r : rows) {
      csv.field(r.n)
          .field(r.gamma)
          .field(r.l_closed)
          .field(r.l_quad)
          .field(r.g_closed)
          .field(r.g_quad)
          .field(r.gl_formula)
          .field(r.gl_quad)
          .field(r.worst);
      csv.end_row();
    }
  }
  for (const auto &r : rows) {
    if (!(r.worst <= 1.0e-6)) {
      std::cerr << "gaussian-example: closed form and quadrature differ by "
                << io::format_double(r.worst) << " at N=" << r.n
                << " gamma=" << r.gamma << "\n";
      code = kViolation;
    }
  }
  return {out.str(), code};
}

// ------------------------------------------------------ verify-bound / scan

struct BoundRun {
  std::vector<WaveFunctionSpec> specs;
  TightnessTable table;
};

std::vector<WaveFunctionSpec> default_specs(bool with_mixture,
                                            std::uint64_t seed) {
  std::vector<WaveFunctionSpec> specs;
  for (int n : {2, 3, 5, 10}) {
    specs.push_back(WaveFunctionSpec::gaussian_product(
        n, 1.0, derive_seed(seed, specs.size())));
  }
  if (with_mixture) {
    specs.push_back(WaveFunctionSpec::shifted_mixture(
        3, 1.0, {{-1.0, 0.0}, {1.0, 0.0}}, derive_seed(seed, specs.size())));
  }
  return specs;
}

// Multiplies every right-hand side; used by tests to force a violation.
void apply_rhs_scale(TightnessTable &table, double scale) {
  table.unconfirmed = 0;
  for (auto &row : table.rows) {
    if (!row.result) {
      continue;
    }
    const Estimate lhs{row.result->lhs, row.result->statistical_error};
    row.result = assemble_bound_check(lhs, scale * row.result->rhs);
    if (!row.result->confirmed()) {
      ++table.unconfirmed;
    }
  }
}

BoundRun run_bound_grid(const Context &ctx, bool with_mixture) {
  BoundRun run;
  if (ctx.config.contains("specs")) {
    const auto &arr = ctx.config.at("specs");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("\"specs\" must be a nonempty array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      run.specs.push_back(
          io::parse_wave_function(arr[i], derive_seed(ctx.seed, i)));
    }
  } else {
    run.specs = default_specs(with_mixture, ctx.seed);
  }
  const auto gammas = io::number_list(ctx.config, "gamma",
                                      {1.001, 1.4, 1.8, 2.0, 2.4, 2.8});
  const auto epsilons = io::number_list(ctx.config, "epsilon",
                                        {0.05, 0.2, 0.5, 1.0, 2.0, 5.0});
  const double samples = io::number(ctx.config, "samples",
                                    static_cast<double>(kDefaultSamples));
  if (!(samples >= 2.0) || samples != std::floor(samples)) {
    throw ConfigError("\"samples\" must be an integer >= 2");
  }
  run.table = tightness_scan(run.specs, gammas, epsilons,
                             static_cast<std::uint64_t>(samples), ctx.exec);
  if (ctx.config.contains("_test_hooks")) {
    const auto scale = io::optional_number(ctx.config.at("_test_hooks"),
                                           "rhs_scale");
    if (scale) {
      apply_rhs_scale(run.table, *scale);
    }
  }
  return run;
}

std::string kind_name(WaveFunctionKind k) {
  return k == WaveFunctionKind::gaussian_product ? "gaussian-product"
                                                 : "shifted-gaussian-mixture";
}

void write_scan_csv(std::ostream &out, const BoundRun &run) {
  io::CsvWriter csv(out, {"gamma", "epsilon", "N", "lhs", "rhs", "slack",
                          "ratio", "stderr"});
  for (const auto &row : run.table.rows) {
    if (!row.result) {
      continue;
    }
    const auto &r = *row.result;
    csv.field(row.gamma)
        .field(row.epsilon)
        .field(static_cast<long long>(row.particles))
        .field(r.lhs)
        .field(r.rhs)
        .field(r.slack)
        .field(r.tightness_ratio)
        .field(r.statistical_error);
    csv.end_row();
  }
}

Json scan_json(const Context &ctx, const BoundRun &run, const char *command) {
  Json cells = Json::array();
  Json violations = Json::array();
  for (std::size_t i = 0; i < run.table.rows.size(); ++i) {
    const auto &row = run.table.rows[i];
    const auto &spec = run.specs[row.spec];
    Json c = {{"cell", i},
              {"spec", row.spec},
              {"kind", kind_name(spec.kind)},
              {"N", row.particles},
              {"A", spec.width},
              {"seed", spec.seed},
              {"gamma", row.gamma},
              {"epsilon", row.epsilon}};
    if (row.result) {
      c.update(io::to_json(*row.result));
      if (!row.result->confirmed()) {
        violations.push_back(i);
      }
    } else {
      c["skipped"] = true;
      c["diagnostic"] = row.diagnostic;
    }
    cells.push_back(std::move(c));
  }
  Json best = Json::array();
  for (std::size_t s = 0; s < run.table.best.size(); ++s) {
    const auto &b = run.table.best[s];
    if (std::isfinite(b.ratio)) {
      best.push_back({{"spec", s},
                      {"gamma", b.gamma},
                      {"epsilon", b.epsilon},
                      {"ratio", b.ratio}});
    }
  }
  return {{"command", command},
          {"seed", ctx.seed},
          {"passed", run.table.unconfirmed == 0},
          {"violations", violations},
          {"skipped", run.table.skipped},
          {"best", best},
          {"cells", cells}};
}

int bound_exit_code(const BoundRun &run, const char *command) {
  for (std::size_t i = 0; i < run.table.rows.size(); ++i) {
    const auto &row = run.table.rows[i];
    if (!row.diagnostic.empty()) {
      std::cerr << command << ": skipped cell " << i << " (spec " << row.spec
                << ", gamma=" << io::format_double(row.gamma)
                << ", epsilon=" << io::format_double(row.epsilon)
                << "): " << row.diagnostic << "\n";
    }
    if (row.result && !row.result->confirmed()) {
      std::cerr << command << ": bound violated at cell " << i << " (spec "
                << row.spec << ", N=" << row.particles
                << ", gamma=" << io::format_double(row.gamma)
                << ", epsilon=" << io::format_double(row.epsilon)
                << "): slack " << io::format_double(row.result->slack)
                << "\n";
    }
  }
  if (run.table.unconfirmed > 0) {
    return kViolation;
  }
  return run.table.skipped > 0 ? kDivergence : kOk;
}

Output run_verify_bound(const Context &ctx) {
  const auto run = run_bound_grid(ctx, true);
  std::ostringstream out;
  if (wants_json(ctx, true)) {
    out << dump(scan_json(ctx, run, "verify-bound"));
  } else {
    write_scan_csv(out, run);
  }
  return {out.str(), bound_exit_code(run, "verify-bound")};
}

Output run_scan(const Context &ctx) {
  const auto run = run_bound_grid(ctx, false);
  std::ostringstream out;
  if (wants_json(ctx, false)) {
    out << dump(scan_json(ctx, run, "scan"));
  } else {
    write_scan_csv(out, run);
  }
  return {out.str(), bound_exit_code(run, "scan")};
}

// ---------------------------------------------------------- stability-sweep

std::vector<DensityProfile> default_corpus() {
  std::vector<double> r, bump, tail;
  for (int i = 0; i <= 40; ++i) {
    const double x = 0.05 * i;
    r.push_back(x);
    bump.push_back(x < 1.0 ? std::pow(1.0 - x * x, 3) : 0.0);
    tail.push_back(0.8 * std::exp(-1.5 * x * x));
  }
  return {
      DensityProfile::gaussian(1.0, 1.0),
      DensityProfile::gaussian(0.2, 0.5),
      DensityProfile::gaussian(5.0, 4.0),
      DensityProfile::gaussian(0.05, 0.05),
      DensityProfile::exponential(1.0, 2.0),
      DensityProfile::exponential(0.3, 0.7),
      DensityProfile::tabulated(r, bump, TailModel::zero),
      DensityProfile::tabulated(r, tail, TailModel::exponential),
      DensityProfile::mixture({{0.6, 1.0, {-1.0, 0.0}}, {0.6, 1.0, {1.0, 0.0}}}),
  };
}

std::vector<MolecularConfig> default_configs() {
  return {
      MolecularConfig::create(1.0, {{0.0, 0.0}}),
      MolecularConfig::create(1.0, {{-1.0, 0.0}, {1.0, 0.0}}),
      MolecularConfig::create(0.5, {{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}}),
  };
}

Output run_stability_sweep(const Context &ctx) {
  if (!wants_json(ctx, true)) {
    throw ConfigError("stability-sweep writes a JSON breakdown; use --format json");
  }
  const auto params = derive_parameters(io::number(ctx.config, "gamma", 2.0),
                                        io::number(ctx.config, "epsilon", 1.0));
  const double a_sq =
      io::number(ctx.config, "a_tilde_sq", a_tilde_squared(params));
  const double b_sq =
      io::number(ctx.config, "b_tilde_sq", b_tilde_squared(params.epsilon()));
  if (!(a_sq > 0.0) || !(b_sq > 0.0)) {
    throw ConfigError("\"a_tilde_sq\" and \"b_tilde_sq\" must be positive");
  }

  std::vector<DensityProfile> corpus;
  if (ctx.config.contains("corpus")) {
    for (const auto &p : ctx.config.at("corpus")) {
      corpus.push_back(io::parse_profile(p));
    }
  } else {
    corpus = default_corpus();
  }
  std::vector<MolecularConfig> configs;
  if (ctx.config.contains("configs")) {
    for (const auto &c : ctx.config.at("configs")) {
      configs.push_back(io::parse_molecule(c));
    }
  } else {
    configs = default_configs();
  }
  if (corpus.empty() || configs.empty()) {
    throw ConfigError("stability-sweep needs a nonempty corpus and configs");
  }

  const auto report = empirical_stability_sweep(corpus, configs, params, a_sq,
                                                b_sq, ctx.exec);
  Json cases = Json::array();
  for (const auto &c : report.cases) {
    Json j = {{"profile", c.profile},
              {"config", c.config},
              {"z", configs[c.config].z()},
              {"violation", c.violation}};
    if (c.breakdown) {
      j.update(io::to_json(*c.breakdown));
    } else {
      j["skipped"] = true;
      j["diagnostic"] = c.diagnostic;
    }
    cases.push_back(std::move(j));
  }
  Json corpus_json = Json::array();
  for (const auto &p : corpus) {
    corpus_json.push_back(io::to_json(p));
  }
  Json configs_json = Json::array();
  for (const auto &c : configs) {
    Json pos = Json::array();
    for (const auto &p : c.positions()) {
      pos.push_back({p.x, p.y});
    }
    configs_json.push_back({{"z", c.z()}, {"positions", pos}});
  }
  Json doc = {{"command", "stability-sweep"},
              {"gamma", params.gamma()},
              {"epsilon", params.epsilon()},
              {"a_tilde_sq", a_sq},
              {"b_tilde_sq", b_sq},
              {"z_max", report.verdict.z_max},
              {"sigma_star", report.verdict.sigma_star},
              {"stable", report.verdict.stable},
              {"min_xi", report.min_xi},
              {"violations", report.violations},
              {"skipped", report.skipped},
              {"passed", report.passed()},
              {"corpus", corpus_json},
              {"configs", configs_json},
              {"cases", cases}};

  int code = kOk;
  for (const auto &c : report.cases) {
    if (c.violation) {
      std::cerr << "stability-sweep: xi < 0 for profile " << c.profile
                << " in config " << c.config << ": xi = "
                << io::format_double(c.breakdown->xi) << "\n";
      code = kViolation;
    } else if (!c.breakdown) {
      std::cerr << "stability-sweep: skipped profile " << c.profile
                << " in config " << c.config << ": " << c.diagnostic << "\n";
      if (code == kOk) {
        code = kDivergence;
      }
    }
  }
  return {dump(doc), code};
}

// ------------------------------------------------------------------- driver

std::uint64_t resolve_seed(const Options &opts, const Json &config) {
  if (opts.seed) {
    return *opts.seed;
  }
  if (const char *env = std::getenv("SEED"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ConfigError("SEED must be an unsigned 64-bit integer");
    }
    return value;
  }
  if (config.contains("seed")) {
    if (!config.at("seed").is_number_unsigned()) {
      throw ConfigError("\"seed\" must be a nonnegative integer");
    }
    return config.at("seed").get<std::uint64_t>();
  }
  return 0;
}

Output dispatch(const Context &ctx) {
  const auto &cmd = ctx.opts.command;
  if (cmd == "constants") {
    return run_constants(ctx);
  }
  if (cmd == "gaussian-example") {
    return run_gaussian_example(ctx);
  }
  if (cmd == "verify-bound") {
    return run_verify_bound(ctx);
  }
  if (cmd == "stability-sweep") {
    return run_stability_sweep(ctx);
  }
  return run_scan(ctx);
}

constexpr const char *kFooter =
    "Exit codes:\n"
    "  0  success\n"
    "  1  inequality violation (offending cell reported on stderr)\n"
    "  2  usage or configuration error\n"
    "  3  numerical divergence (a quadrature failed to converge)\n"
    "\n"
    "The SEED environment variable sets the Monte Carlo seed when --seed is\n"
    "not given; it overrides a \"seed\" key in the config.";

} // namespace

int run(int argc, const char *const *argv) {
  CLI::App app{"Numerical checks of the two-dimensional indirect Coulomb "
               "energy bound",
               "lo2d"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Options opts;
  const std::vector<std::pair<const char *, const char *>> commands = {
      {"constants", "Tabulate the bound constants over (gamma, epsilon)"},
      {"gaussian-example", "Gaussian L, G and G/L: closed form vs quadrature"},
      {"verify-bound", "Check the lower bound on product states (JSON report)"},
      {"stability-sweep", "Evaluate xi over a density corpus and nuclei"},
      {"scan", "Tightness-ratio grid over (gamma, epsilon) as CSV"},
  };
  for (const auto &[name, help] : commands) {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_path, "Output file (default: stdout)");
    sub->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option_function<std::uint64_t>(
        "--seed", [&opts](const std::uint64_t &s) { opts.seed = s; },
        "Monte Carlo seed");
    sub->add_option("--jobs", opts.jobs, "Worker threads (0: all)")
        ->check(CLI::NonNegativeNumber);
    sub->footer(kFooter);
    sub->callback([&opts, n = std::string(name)] { opts.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Context ctx;
    ctx.opts = opts;
    if (!opts.config_path.empty()) {
      ctx.config = io::read_json_file(opts.config_path);
      if (!ctx.config.is_object()) {
        throw ConfigError("config must be a JSON object");
      }
    }
    ctx.seed = resolve_seed(opts, ctx.config);
    ctx.exec = opts.jobs == 1 ? Execution::serial : Execution::parallel;
    const ThreadLimit limit(opts.jobs);

    const auto result = dispatch(ctx);
    if (opts.out_path.empty()) {
      std::cout << result.text << std::flush;
    } else {
      std::ofstream out(opts.out_path, std::ios::binary);
      out << result.text;
      if (!out) {
        throw ConfigError("cannot write " + opts.out_path);
      }
    }
    return result.code;
  } catch (const ConfigError &e) {
    std::cerr << "lo2d: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError &e) {
    std::cerr << "lo2d: " << e.what() << "\n";
    return kUsage;
  } catch (const DivergenceError &e) {
    std::cerr << "lo2d: " << e.what() << "\n";
    return kDivergence;
  } catch (const Json::exception &e) {
    std::cerr << "lo2d: bad config: " << e.what() << "\n";
    return kUsage;
  }
}

int run(const std::vector<std::string> &args) {
  std::vector<const char *> argv{"lo2d"};
  for (const auto &a : args) {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace lo2d::cli
