#include "opsys/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace opsys {

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Json exponent_value(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

namespace {

void dump_into(const Json& value, std::string& out) {
  switch (value.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double d = value.get<double>();
      out += std::isfinite(d) ? format_g17(d) : "null";
      break;
    }
    default:
      out += value.dump();
  }
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

void VerificationReport::add_quantity(const std::string& name, double value) {
  quantities[name] = value;
}

void VerificationReport::add_quantity(const std::string& name, Complex value) {
  quantities[name] = Json::array({value.real(), value.imag()});
}

void VerificationReport::add_residual(const std::string& name, double value, double tolerance) {
  residuals.push_back(Residual{name, value, tolerance});
}

const Residual* VerificationReport::find_residual(const std::string& name) const {
  for (const auto& r : residuals) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

double VerificationReport::quantity(const std::string& name) const {
  if (!quantities.contains(name) || !quantities[name].is_number()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return quantities[name].get<double>();
}

bool VerificationReport::finalize() {
  passed = true;
  for (const auto& r : residuals) {
    if (!(std::isfinite(r.value) && r.value <= r.tolerance)) passed = false;
  }
  return passed;
}

Json VerificationReport::as_json() const {
  Json in = inputs;
  Json tolerances = Json::object();
  Json res = Json::object();
  for (const auto& r : residuals) {
    tolerances[r.name] = r.tolerance;
    res[r.name] = r.value;
  }
  in["tolerances"] = std::move(tolerances);
  Json out = Json::object();
  out["check_name"] = check_name;
  out["inputs"] = std::move(in);
  out["quantities"] = quantities;
  out["residuals"] = std::move(res);
  out["passed"] = passed;
  out["elapsed_ms"] = elapsed_ms;
  return out;
}

std::string VerificationReport::to_json() const { return dump_json(as_json()); }

std::string VerificationReport::csv_header() {
  return "check_name,case,n,p,passed,worst_residual,worst_value,worst_tolerance,elapsed_ms";
}

std::string VerificationReport::to_csv_row() const {
  auto field = [this](const char* key) -> std::string {
    if (!inputs.contains(key)) return "";
    const Json& v = inputs[key];
    return v.is_string() ? v.get<std::string>() : dump_json(v);
  };
  // Worst residual = largest value/tolerance ratio (non-finite counts as worst).
  const Residual* worst = nullptr;
  double worst_ratio = -1.0;
  for (const auto& r : residuals) {
    double ratio = r.tolerance > 0.0 ? r.value / r.tolerance : (r.value > 0.0 ? 1e300 : 0.0);
    if (!std::isfinite(r.value)) ratio = std::numeric_limits<double>::infinity();
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = &r;
    }
  }
  std::ostringstream os;
  os << check_name << ',' << field("case") << ',' << field("n") << ',' << field("p") << ','
     << (passed ? "true" : "false") << ',';
  if (worst != nullptr) {
    os << worst->name << ',' << format_g17(worst->value) << ',' << format_g17(worst->tolerance);
  } else {
    os << ",,";
  }
  os << ',' << format_g17(elapsed_ms);
  return os.str();
}

}  // namespace opsys
