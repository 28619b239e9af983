#include "lo2d/io.hpp"
#include "lo2d/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <variant>

namespace lo2d::io {

namespace {

[[noreturn]] void fail(const std::string &msg) { throw ConfigError(msg); }

double real_at(const Json &j, const std::string &key) {
  if (!j.contains(key)) {
    fail("missing key \"" + key + "\"");
  }
  const auto &v = j.at(key);
  if (!v.is_number()) {
    fail("\"" + key + "\" must be a number");
  }
  return v.get<double>();
}

std::vector<double> reals(const Json &v, const std::string &where) {
  if (!v.is_array()) {
    fail("\"" + where + "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto &x : v) {
    if (!x.is_number()) {
      fail("\"" + where + "\" must be an array of numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

Point center_of(const Json &j) {
  return j.contains("center") ? parse_point(j.at("center"), "center") : Point{};
}

GaussianProfile gaussian_component(const Json &j) {
  return {real_at(j, "C"), real_at(j, "A"), center_of(j)};
}

} // namespace

Point parse_point(const Json &j, const std::string &where) {
  const auto xy = reals(j, where);
  if (xy.size() != 2) {
    fail("\"" + where + "\" must be a point [x, y]");
  }
  return {xy[0], xy[1]};
}

DensityProfile parse_profile(const Json &j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    fail("profile descriptor needs a string \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    const auto g = gaussian_component(j);
    return DensityProfile::gaussian(g.amplitude, g.width, g.center);
  }
  if (kind == "exponential") {
    return DensityProfile::exponential(real_at(j, "C"), real_at(j, "k"),
                                       center_of(j));
  }
  if (kind == "tabulated") {
    if (!j.contains("r") || !j.contains("rho")) {
      fail("tabulated profile needs \"r\" and \"rho\"");
    }
    TailModel tail = TailModel::zero;
    if (j.contains("tail")) {
      const auto t = j.at("tail").get<std::string>();
      if (t == "exponential") {
        tail = TailModel::exponential;
      } else if (t != "zero") {
        fail("unknown tail model \"" + t + "\"");
      }
    }
    return DensityProfile::tabulated(reals(j.at("r"), "r"),
                                     reals(j.at("rho"), "rho"), tail,
                                     center_of(j));
  }
  if (kind == "mixture") {
    if (!j.contains("components") || !j.at("components").is_array()) {
      fail("mixture profile needs a \"components\" array");
    }
    std::vector<GaussianProfile> comps;
    for (const auto &c : j.at("components")) {
      comps.push_back(gaussian_component(c));
    }
    return DensityProfile::mixture(std::move(comps));
  }
  fail("unknown profile kind \"" + kind + "\"");
}

WaveFunctionSpec parse_wave_function(const Json &j,
                                     std::uint64_t fallback_seed) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    fail("wave function spec needs a string \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (!j.contains("N") || !j.at("N").is_number_integer()) {
    fail("wave function spec needs an integer \"N\"");
  }
  const int n = j.at("N").get<int>();
  const double a = real_at(j, "A");
  std::uint64_t seed = fallback_seed;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      fail("\"seed\" must be a nonnegative integer");
    }
    seed = j.at("seed").get<std::uint64_t>();
  }
  if (kind == "gaussian-product") {
    return WaveFunctionSpec::gaussian_product(n, a, seed);
  }
  if (kind == "shifted-gaussian-mixture") {
    if (!j.contains("centers") || !j.at("centers").is_array()) {
      fail("shifted-gaussian-mixture needs a \"centers\" array");
    }
    std::vector<Point> centers;
    for (const auto &c : j.at("centers")) {
      centers.push_back(parse_point(c, "centers"));
    }
    return WaveFunctionSpec::shifted_mixture(n, a, std::move(centers), seed);
  }
  fail("unknown wave function kind \"" + kind + "\"");
}

MolecularConfig parse_molecule(const Json &j) {
  if (!j.is_object() || !j.contains("positions") ||
      !j.at("positions").is_array()) {
    fail("nuclear configuration needs a \"positions\" array");
  }
  std::vector<Point> pos;
  for (const auto &p : j.at("positions")) {
    pos.push_back(parse_point(p, "positions"));
  }
  return MolecularConfig::create(real_at(j, "z"), std::move(pos));
}

std::vector<double> number_list(const Json &j, const std::string &key,
                                std::vector<double> fallback) {
  if (!j.is_object() || !j.contains(key)) {
    return fallback;
  }
  return reals(j.at(key), key);
}

double number(const Json &j, const std::string &key, double fallback) {
  return optional_number(j, key).value_or(fallback);
}

std::optional<double> optional_number(const Json &j, const std::string &key) {
  if (!j.is_object() || !j.contains(key)) {
    return std::nullopt;
  }
  return real_at(j, key);
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    fail("cannot open config file " + path);
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    fail("config " + path + " is not valid JSON: " + e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// JSON has no literal for non-finite numbers.
Json number_json(double x) {
  if (std::isfinite(x)) {
    return x;
  }
  return format_double(x);
}

} // namespace

Json to_json(const FunctionalBreakdown &b) {
  Json j;
  j["gradient_term"] = number_json(b.gradient_term);
  j["l_term"] = number_json(b.l_term);
  j["attraction"] = number_json(b.attraction);
  j["direct"] = number_json(b.direct);
  j["repulsion"] = number_json(b.repulsion);
  j["xi"] = number_json(b.xi);
  j["analytic_lower_bound"] = number_json(b.analytic_lower_bound);
  j["stable"] = b.stable;
  j["single_nucleus"] = b.single_nucleus;
  return j;
}

Json to_json(const BoundCheckResult &r) {
  Json j;
  j["lhs"] = number_json(r.lhs);
  j["rhs"] = number_json(r.rhs);
  j["slack"] = number_json(r.slack);
  j["ratio"] = number_json(r.tightness_ratio);
  j["stderr"] = number_json(r.statistical_error);
  j["confirmed"] = r.confirmed();
  return j;
}

Json to_json(const DensityProfile &rho) {
  auto point = [](Point p) { return Json::array({p.x, p.y}); };
  auto gaussian = [&](const GaussianProfile &g) {
    return Json{{"kind", "gaussian"},
                {"C", g.amplitude},
                {"A", g.width},
                {"center", point(g.center)}};
  };
  return std::visit(
      [&](const auto &p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianProfile>) {
          return gaussian(p);
        } else if constexpr (std::is_same_v<T, ExponentialProfile>) {
          return Json{{"kind", "exponential"},
                      {"C", p.amplitude},
                      {"k", p.decay},
                      {"center", point(p.center)}};
        } else if constexpr (std::is_same_v<T, TabulatedProfile>) {
          return Json{{"kind", "tabulated"},
                      {"r", p.radii()},
                      {"rho", p.values()},
                      {"tail", p.tail() == TailModel::zero ? "zero"
                                                           : "exponential"},
                      {"center", point(p.center())}};
        } else {
          Json comps = Json::array();
          for (const auto &c : p.components) {
            comps.push_back(gaussian(c));
          }
          return Json{{"kind", "mixture"}, {"components", comps}};
        }
      },
      rho.variant());
}

CsvWriter::CsvWriter(std::ostream &out, const std::vector<std::string> &header)
    : m_out(out), m_columns(header.size()) {
  for (const auto &h : header) {
    field(h);
  }
  end_row();
}

void CsvWriter::separator() {
  if (m_in_row++ > 0) {
    m_out << ',';
  }
}

CsvWriter &CsvWriter::field(double x) {
  separator();
  m_out << format_double(x);
  return *this;
}

CsvWriter &CsvWriter::field(long long x) {
  separator();
  m_out << x;
  return *this;
}

CsvWriter &CsvWriter::field(const std::string &s) {
  separator();
  m_out << s;
  return *this;
}

void CsvWriter::end_row() {
  if (m_in_row != m_columns) {
    throw std::logic_error("CSV row has the wrong number of fields");
  }
  m_out << '\n';
  m_in_row = 0;
}

} // namespace lo2d::io
