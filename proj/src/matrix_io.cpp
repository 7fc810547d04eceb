#include "coex/matrix_io.hpp"

#include <fstream>

#include "coex/errors.hpp"

namespace coex {

HermitianMatrix matrix_from_json(const nlohmann::json& j, double tol_herm) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw Error(ErrorKind::Parse, "expected an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw Error(ErrorKind::Parse, "\"dim\" must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(j["dim"].get<long long>());
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n * n) {
    throw Error(ErrorKind::Parse, "\"entries\" must hold dim*dim [re, im] pairs");
  }
  Matrix m(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    const auto& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorKind::Parse, "entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    m(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return HermitianMatrix(m, tol_herm);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back({m(i, k).real(), m(i, k).imag()});
  }
  return {{"dim", m.rows()}, {"entries", entries}};
}

HermitianMatrix read_matrix_file(const std::string& path, double tol_herm) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return matrix_from_json(j, tol_herm);
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << matrix_to_json(m).dump() << '\n';
}

}  // namespace coex
