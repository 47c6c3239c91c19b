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

#include "prae/ensemble_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace prae::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FormatError(where + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::string child(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

int int_member(const Json& obj, const char* key, int lo) {
  const Json& v = member(obj, key, "");
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto value = v.get<long long>();
  if (value < lo || value > (1LL << 20)) fail(key, "out of range");
  return static_cast<int>(value);
}

Field field_member(const Json& obj) {
  const Json& v = member(obj, "field", "");
  if (!v.is_string()) fail("field", "expected \"R\" or \"C\"");
  try {
    return field_from_string(v.get<std::string>());
  } catch (const ParameterError& e) {
    fail("field", e.what());
  }
}

const Json& array_of(const Json& v, std::size_t n, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  if (v.size() != n) {
    fail(where, "expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
  }
  return v;
}

Scalar field_scalar(const Json& v, Field field, const std::string& where) {
  const Scalar s = scalar_from_json(v, where);
  if (field == Field::Real && s.imag() != 0.0) fail(where, "non-real entry in a REAL file");
  return s;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(path.string() + ": cannot write");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw FormatError(path.string() + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw FormatError(path.string() + ": rename failed");
  }
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

Json scalar_to_json(Scalar value, Field field) {
  if (field == Field::Real) return value.real();
  return Json::array({value.real(), value.imag()});
}

Scalar scalar_from_json(const Json& value, const std::string& where) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  fail(where, "expected a number or an [re, im] pair");
}

Json vector_to_json(const Vector& x, Field field) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(scalar_to_json(x(i), field));
  return out;
}

Vector vector_from_json(const Json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) fail(where, "expected a non-empty array");
  Vector x(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    x(static_cast<Eigen::Index>(i)) = scalar_from_json(value[i], child(where, i));
  }
  return x;
}

Json ensemble_to_json(const Ensemble& ensemble) {
  Json out;
  out["field"] = std::string(to_string(ensemble.field()));
  out["d"] = ensemble.dim();
  out["N"] = ensemble.size();
  out["kind"] = std::string(to_string(ensemble.kind()));
  out["seed"] = ensemble.seed() ? Json(*ensemble.seed()) : Json(nullptr);
  if (ensemble.ranks()) out["ranks"] = *ensemble.ranks();
  Json matrices = Json::array();
  for (const Matrix& a : ensemble.matrices()) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      rows.push_back(vector_to_json(a.row(r).transpose(), ensemble.field()));
    matrices.push_back(std::move(rows));
  }
  out["matrices"] = std::move(matrices);
  return out;
}

Ensemble ensemble_from_json(const Json& value) {
  if (!value.is_object()) fail("(root)", "expected an object");
  const Field field = field_member(value);
  const int d = int_member(value, "d", 1);
  const int n = int_member(value, "N", 1);

  EnsembleKind kind = EnsembleKind::Ingested;
  if (const auto it = value.find("kind"); it != value.end()) {
    if (!it->is_string()) fail("kind", "expected a string");
    try {
      kind = ensemble_kind_from_string(it->get<std::string>());
    } catch (const ParameterError& e) {
      fail("kind", e.what());
    }
  }
  std::optional<std::uint64_t> seed;
  if (const auto it = value.find("seed"); it != value.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) fail("seed", "expected a nonnegative integer or null");
    seed = it->get<std::uint64_t>();
  }
  std::optional<std::vector<int>> ranks;
  if (const auto it = value.find("ranks"); it != value.end() && !it->is_null()) {
    array_of(*it, static_cast<std::size_t>(n), "ranks");
    ranks.emplace();
    for (std::size_t j = 0; j < it->size(); ++j) {
      if (!(*it)[j].is_number_integer()) fail(child("ranks", j), "expected an integer");
      ranks->push_back((*it)[j].get<int>());
    }
  }

  const Json& mats =
      array_of(member(value, "matrices", ""), static_cast<std::size_t>(n), "matrices");
  std::vector<Matrix> matrices;
  matrices.reserve(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < mats.size(); ++j) {
    const std::string mj = child("matrices", j);
    const Json& rows = array_of(mats[j], static_cast<std::size_t>(d), mj);
    Matrix a(d, d);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string mr = child(mj, r);
      const Json& row = array_of(rows[r], static_cast<std::size_t>(d), mr);
      for (std::size_t c = 0; c < row.size(); ++c) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            field_scalar(row[c], field, child(mr, c));
      }
    }
    matrices.push_back(std::move(a));
  }
  try {
    return Ensemble(field, d, std::move(matrices), kind, std::move(ranks), seed);
  } catch (const ParameterError& e) {
    fail("(root)", e.what());
  }
}

Ensemble read_ensemble(const std::filesystem::path& path) {
  const Json value = read_json_file(path);
  try {
    return ensemble_from_json(value);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_ensemble(const std::filesystem::path& path, const Ensemble& ensemble) {
  write_atomic(path, dump(ensemble_to_json(ensemble)));
}

Json frame_to_json(const Frame& frame) {
  Json out;
  out["field"] = std::string(to_string(frame.field()));
  out["d"] = frame.dim();
  out["N"] = frame.size();
  Json cols = Json::array();
  for (int j = 0; j < frame.size(); ++j)
    cols.push_back(vector_to_json(frame.columns().col(j), frame.field()));
  out["columns"] = std::move(cols);
  return out;
}

Frame frame_from_json(const Json& value) {
  if (!value.is_object()) fail("(root)", "expected an object");
  const Field field = field_member(value);
  const int d = int_member(value, "d", 1);
  const int n = int_member(value, "N", 1);
  const Json& cols = array_of(member(value, "columns", ""), static_cast<std::size_t>(n), "columns");
  Matrix f(d, n);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const std::string cj = child("columns", j);
    const Json& col = array_of(cols[j], static_cast<std::size_t>(d), cj);
    for (std::size_t i = 0; i < col.size(); ++i) {
      f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          field_scalar(col[i], field, child(cj, i));
    }
  }
  try {
    return Frame(field, std::move(f));
  } catch (const ParameterError& e) {
    fail("columns", e.what());
  }
}

Frame read_frame(const std::filesystem::path& path) {
  const Json value = read_json_file(path);
  try {
    return frame_from_json(value);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Vector read_signal(const std::filesystem::path& path) {
  const Json value = read_json_file(path);
  try {
    if (value.is_object()) return vector_from_json(member(value, "x", ""), "x");
    return vector_from_json(value, "(root)");
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string measurements_to_text(const MeasurementVector& values) {
  std::string out = "[";
  char buf[40];
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", values(j));
    if (j > 0) out += ", ";
    out += buf;
  }
  out += "]\n";
  return out;
}

MeasurementVector measurements_from_json(const Json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) fail(where, "expected a non-empty array of numbers");
  MeasurementVector b(static_cast<Eigen::Index>(value.size()));
  for (std::size_t j = 0; j < value.size(); ++j) {
    if (!value[j].is_number()) fail(child(where, j), "expected a number");
    b(static_cast<Eigen::Index>(j)) = value[j].get<double>();
    if (!std::isfinite(b(static_cast<Eigen::Index>(j)))) fail(child(where, j), "not finite");
  }
  return b;
}

MeasurementVector read_measurements(const std::filesystem::path& path) {
  const Json value = read_json_file(path);
  try {
    if (value.is_object()) return measurements_from_json(member(value, "values", ""), "values");
    return measurements_from_json(value, "(root)");
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace prae::io
