#pragma once

#include "opsys/linalg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace opsys {

using Json = nlohmann::ordered_json;

struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
};

/// Outcome of one check. passed is true iff every residual is finite and
/// within its declared tolerance; finalize() recomputes it.
struct VerificationReport {
  std::string check_name;
  Json inputs = Json::object();
  Json quantities = Json::object();
  std::vector<Residual> residuals;
  bool passed = false;
  double elapsed_ms = 0.0;

  void set_input(const std::string& key, Json value) { inputs[key] = std::move(value); }
  void add_quantity(const std::string& name, double value);
  void add_quantity(const std::string& name, Complex value);
  void add_residual(const std::string& name, double value, double tolerance);

  const Residual* find_residual(const std::string& name) const;
  double quantity(const std::string& name) const;

  bool finalize();

  /// One-line JSON object; floating point values use 17 significant digits.
  std::string to_json() const;
  Json as_json() const;

  static std::string csv_header();
  std::string to_csv_row() const;
};

/// Serializes with 17 significant digits; non-finite numbers become null.
std::string dump_json(const Json& value);

/// Finite exponents as numbers, infinity as the string "inf".
Json exponent_value(double p);

/// printf("%.17g").
std::string format_g17(double value);

}  // namespace opsys
