#pragma once

#include <string>

#include <json.hpp>

#include "coex/matrix_core.hpp"

namespace coex {

/// Matrix file: {"dim": n, "entries": [[re, im], ...]} with n² entries in
/// row-major order. Parse failures throw Error(Parse); an asymmetric
/// matrix throws NonHermitian.
HermitianMatrix matrix_from_json(const nlohmann::json& j, double tol_herm = 1e-9);
nlohmann::json matrix_to_json(const Matrix& m);

HermitianMatrix read_matrix_file(const std::string& path, double tol_herm = 1e-9);
void write_matrix_file(const std::string& path, const Matrix& m);

}  // namespace coex
