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

#pragma once

// State files: {"dim": d, "matrix": [[[re, im], ...], ...], "label": "..."}.

#include <optional>
#include <string>

#include <json.hpp>

#include "qrt/state.hpp"

namespace qrt {

/// The raw contents of a state file. Writing then reading reproduces
/// `matrix` bit for bit; validation happens in to_density_matrix.
struct StateFile {
  HermitianMatrix matrix;
  std::optional<std::string> label;
};

StateFile state_file_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StateFile& file);

/// Throws ValidationError for unreadable or malformed files.
StateFile read_state_file(const std::string& path);
void write_state_file(const std::string& path, const StateFile& file);

/// Checks Hermiticity, positivity and unit trace within 1e-6, then
/// renormalizes. The error message names the violated invariant.
DensityMatrix to_density_matrix(const StateFile& file);

}  // namespace qrt
