#pragma once

#include <string>

#include <json.hpp>

#include "matmeans/hermitian.hpp"

namespace matmeans {

// Matrix file format: {"dim": n, "re": [[...]], "im": [[...]]}; a missing "im" means zero.
// Doubles are written in shortest round-trip form, so write/read is bit-exact.
nlohmann::json to_json(const HermitianMatrix& a);
HermitianMatrix hermitian_from_json(const nlohmann::json& j);

// Rectangular variant (Kraus operators); "dim" is optional, shape comes from "re".
nlohmann::json to_json(const CMatrix& a);
CMatrix cmatrix_from_json(const nlohmann::json& j);

HermitianMatrix read_matrix_file(const std::string& path);
CMatrix read_cmatrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const HermitianMatrix& a);

}  // namespace matmeans
