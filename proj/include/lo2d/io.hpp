#pragma once

// JSON descriptors for profiles, wave functions and nuclear configurations,
// and the text formatting shared by every CSV/JSON writer.
//
//   profile   {"kind": "gaussian", "C": 1, "A": 2, "center": [0, 0]}
//             {"kind": "exponential", "C": 1, "k": 3}
//             {"kind": "tabulated", "r": [...], "rho": [...], "tail": "zero"}
//             {"kind": "mixture", "components": [<gaussian>, ...]}
//   spec      {"kind": "gaussian-product", "N": 3, "A": 1, "seed": 7}
//             {"kind": "shifted-gaussian-mixture", "N": 2, "A": 1,
//              "centers": [[-1, 0], [1, 0]], "seed": 7}
//   molecule  {"z": 1, "positions": [[0, 0], [2, 0]]}
//
// Every parse failure is reported as ConfigError naming the offending key.

#include "lo2d/coulomb.hpp"
#include "lo2d/density.hpp"
#include "lo2d/manybody.hpp"
#include "lo2d/stability.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lo2d::io {

using Json = nlohmann::ordered_json;

Point parse_point(const Json &j, const std::string &where);
DensityProfile parse_profile(const Json &j);
// A spec without "seed" takes `fallback_seed`.
WaveFunctionSpec parse_wave_function(const Json &j, std::uint64_t fallback_seed);
MolecularConfig parse_molecule(const Json &j);

// Optional list of reals under `key`; `fallback` when absent.
std::vector<double> number_list(const Json &j, const std::string &key,
                                std::vector<double> fallback);
double number(const Json &j, const std::string &key, double fallback);
std::optional<double> optional_number(const Json &j, const std::string &key);

Json read_json_file(const std::string &path);

// Shortest decimal string that reads back to the same double; "nan", "inf"
// and "-inf" for non-finite values.
std::string format_double(double x);

Json to_json(const FunctionalBreakdown &b);
Json to_json(const BoundCheckResult &r);
Json to_json(const DensityProfile &rho);

class CsvWriter {
public:
  CsvWriter(std::ostream &out, const std::vector<std::string> &header);

  CsvWriter &field(double x);
  CsvWriter &field(long long x);
  CsvWriter &field(const std::string &s);
  void end_row();

private:
  void separator();

  std::ostream &m_out;
  std::size_t m_columns;
  std::size_t m_in_row{0};
};

} // namespace lo2d::io
