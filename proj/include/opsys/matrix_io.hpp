#pragma once

// MatrixFile JSON: {"rows": n, "cols": m, "entries": [[re, im], ...]}, row-major.

#include "opsys/linalg.hpp"

#include <filesystem>
#include <string>

namespace opsys {

/// Throws Error(Parse) on malformed JSON, wrong shape or non-finite values.
ComplexMatrix parse_matrix_json(const std::string& text);

/// Throws Error(Parse) when the file cannot be read or parsed.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// Numbers use 17 significant digits so values round-trip exactly.
std::string matrix_to_json(const ComplexMatrix& a);

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& a);

}  // namespace opsys
