#include "matmeans/matrix_io.hpp"

#include <fstream>

#include "matmeans/errors.hpp"

namespace matmeans {

nlohmann::json to_json(const CMatrix& a) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  bool has_imag = false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      re_row.push_back(a(i, j).real());
      im_row.push_back(a(i, j).imag());
      has_imag = has_imag || a(i, j).imag() != 0.0;
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json out;
  if (a.rows() == a.cols()) out["dim"] = a.rows();
  out["re"] = std::move(re);
  if (has_imag) out["im"] = std::move(im);
  return out;
}

nlohmann::json to_json(const HermitianMatrix& a) { return to_json(a.matrix()); }

CMatrix cmatrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re") || !j["re"].is_array() || j["re"].empty()) {
    throw ConfigError("matrix JSON needs a non-empty \"re\" array");
  }
  const auto& re = j["re"];
  const auto rows = static_cast<Eigen::Index>(re.size());
  if (!re[0].is_array() || re[0].empty()) throw ConfigError("matrix JSON rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(re[0].size());
  const bool has_imag = j.contains("im");
  if (has_imag && (!j["im"].is_array() || static_cast<Eigen::Index>(j["im"].size()) != rows)) {
    throw ConfigError("matrix JSON \"im\" shape differs from \"re\"");
  }
  if (j.contains("dim") && (j["dim"].get<Eigen::Index>() != rows || rows != cols)) {
    throw ConfigError("matrix JSON \"dim\" disagrees with the entries");
  }
  CMatrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& re_row = re[static_cast<std::size_t>(r)];
    if (!re_row.is_array() || static_cast<Eigen::Index>(re_row.size()) != cols) {
      throw ConfigError("matrix JSON rows have inconsistent length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      double imag = 0.0;
      if (has_imag) {
        const auto& im_row = j["im"][static_cast<std::size_t>(r)];
        if (!im_row.is_array() || static_cast<Eigen::Index>(im_row.size()) != cols) {
          throw ConfigError("matrix JSON \"im\" shape differs from \"re\"");
        }
        imag = im_row[static_cast<std::size_t>(c)].get<double>();
      }
      out(r, c) = Complex(re_row[static_cast<std::size_t>(c)].get<double>(), imag);
    }
  }
  return out;
}

HermitianMatrix hermitian_from_json(const nlohmann::json& j) {
  const CMatrix m = cmatrix_from_json(j);
  if (m.rows() != m.cols()) throw ConfigError("Hermitian matrix JSON must be square");
  return HermitianMatrix(m);
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace

HermitianMatrix read_matrix_file(const std::string& path) { return hermitian_from_json(read_json_file(path)); }

CMatrix read_cmatrix_file(const std::string& path) { return cmatrix_from_json(read_json_file(path)); }

void write_matrix_file(const std::string& path, const HermitianMatrix& a) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write matrix file " + path);
  out << to_json(a).dump() << '\n';
}

}  // namespace matmeans
