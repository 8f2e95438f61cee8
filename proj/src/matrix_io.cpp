#include "opsys/matrix_io.hpp"

#include "opsys/error.hpp"
#include "opsys/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace opsys {

ComplexMatrix parse_matrix_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("entries")) {
    throw Error(ErrorCode::Parse, "matrix file needs rows, cols and entries");
  }
  const Json& rows_v = doc["rows"];
  const Json& cols_v = doc["cols"];
  if (!rows_v.is_number_integer() || !cols_v.is_number_integer()) {
    throw Error(ErrorCode::Parse, "rows and cols must be integers");
  }
  const auto rows = rows_v.get<long long>();
  const auto cols = cols_v.get<long long>();
  if (rows < 1 || cols < 1) throw Error(ErrorCode::Parse, "rows and cols must be positive");
  const Json& entries = doc["entries"];
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
    throw Error(ErrorCode::Parse, "entries must hold rows*cols pairs");
  }
  ComplexMatrix a(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const Json& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::Parse, "entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw Error(ErrorCode::Parse, "entry " + std::to_string(k) + " is not finite");
    }
    a(k / cols, k % cols) = Complex(re, im);
  }
  return a;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_json(buffer.str());
}

std::string matrix_to_json(const ComplexMatrix& a) {
  std::string out = "{\"rows\":" + std::to_string(a.rows()) +
                    ",\"cols\":" + std::to_string(a.cols()) + ",\"entries\":[";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != 0 || j != 0) out += ',';
      out += '[' + format_g17(a(i, j).real()) + ',' + format_g17(a(i, j).imag()) + ']';
    }
  }
  out += "]}";
  return out;
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path.string());
  out << matrix_to_json(a) << '\n';
}

}  // namespace opsys
