// Copyright 2026 The qrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qrt {

using nlohmann::json;

StateFile state_file_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("state file: top level must be an object");
  if (!j.contains("matrix") || !j["matrix"].is_array()) {
    throw ValidationError("state file: missing 'matrix' array");
  }
  const json& rows = j["matrix"];
  const auto d = static_cast<Eigen::Index>(rows.size());
  if (d == 0) throw ValidationError("state file: 'matrix' is empty");
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() != d) {
      throw ValidationError("state file: 'dim' does not match the matrix size " + std::to_string(d));
    }
  }
  StateFile f;
  f.matrix.resize(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw ValidationError("state file: matrix is not square (row " + std::to_string(r) + ")");
    }
    for (Eigen::Index c = 0; c < d; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ValidationError("state file: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                              ") must be [re, im]");
      }
      f.matrix(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ValidationError("state file: 'label' must be a string");
    f.label = j["label"].get<std::string>();
  }
  return f;
}

json to_json(const StateFile& file) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < file.matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < file.matrix.cols(); ++c) {
      row.push_back({file.matrix(r, c).real(), file.matrix(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  json j = {{"dim", file.matrix.rows()}, {"matrix", std::move(rows)}};
  if (file.label) j["label"] = *file.label;
  return j;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return state_file_from_json(j);
}

void write_state_file(const std::string& path, const StateFile& file) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write state file '" + path + "'");
  out << to_json(file).dump(2) << '\n';
}

DensityMatrix to_density_matrix(const StateFile& file) {
  const HermitianMatrix& m = file.matrix;
  if (hermitian_defect(m) > 1e-8) throw ValidationError("state file: matrix is not Hermitian");
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "state file: trace is " << trace << ", expected 1 within 1e-6";
    throw ValidationError(msg.str());
  }
  const double lmin = min_eigenvalue(symmetrize(m));
  if (lmin < -1e-8) {
    std::ostringstream msg;
    msg << "state file: matrix is not positive semidefinite (min eigenvalue " << lmin << ")";
    throw ValidationError(msg.str());
  }
  NumericPolicy policy;
  policy.psd_tol = 1e-8;
  policy.hermitian_tol = 1e-8;
  return DensityMatrix::normalized(symmetrize(m), policy);
}

}  // namespace qrt
