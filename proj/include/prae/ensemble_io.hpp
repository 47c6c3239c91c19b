// Copyright 2026 The prae Authors
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

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>
#include "prae/core.hpp"
#include "prae/ensembles.hpp"
#include "prae/measurement.hpp"

namespace prae::io {

using Json = nlohmann::ordered_json;

/// Parses a JSON file; FormatError carries the file name and line/column.
Json read_json_file(const std::filesystem::path& path);

/// Writes `text` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view text);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& value);

/// Scalars are bare numbers for REAL and [re, im] pairs for COMPLEX.
Json scalar_to_json(Scalar value, Field field);
/// Accepts a bare number or an [re, im] pair; `where` names the field path
/// used in FormatError messages.
Scalar scalar_from_json(const Json& value, const std::string& where);

Json vector_to_json(const Vector& x, Field field);
Vector vector_from_json(const Json& value, const std::string& where);

/// {"field", "d", "N", "kind", "seed", "matrices"[, "ranks"]}, row-major.
Json ensemble_to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const Json& value);
Ensemble read_ensemble(const std::filesystem::path& path);
void write_ensemble(const std::filesystem::path& path, const Ensemble& ensemble);

/// {"field", "d", "N", "columns"}: one entry list per frame vector.
Json frame_to_json(const Frame& frame);
Frame frame_from_json(const Json& value);
Frame read_frame(const std::filesystem::path& path);

/// A signal file is either a bare entry array or an object with key "x".
Vector read_signal(const std::filesystem::path& path);

/// JSON array text with 17 significant digits per value.
std::string measurements_to_text(const MeasurementVector& values);
MeasurementVector measurements_from_json(const Json& value, const std::string& where);
MeasurementVector read_measurements(const std::filesystem::path& path);

}  // namespace prae::io
