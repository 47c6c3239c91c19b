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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "prae/certify.hpp"
#include "prae/ensemble_io.hpp"
#include "prae/measurement.hpp"
#include "prae/report_io.hpp"
#include "test_support.hpp"

namespace prae {
namespace {

namespace fs = std::filesystem;
using io::Json;
using prae::testing::real_vector;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ =
        fs::temp_directory_path() /
        ("prae_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

std::string format_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

TEST(Scalars, AcceptNumbersAndPairs) {
  EXPECT_EQ(io::scalar_from_json(Json(2.5), "a"), Scalar(2.5, 0.0));
  EXPECT_EQ(io::scalar_from_json(Json::array({1.0, -3.0}), "a"), Scalar(1.0, -3.0));
  EXPECT_EQ(io::scalar_to_json(Scalar(1.0, 2.0), Field::Real), Json(1.0));
  EXPECT_EQ(io::scalar_to_json(Scalar(1.0, 2.0), Field::Complex), Json::array({1.0, 2.0}));
  EXPECT_THROW(io::scalar_from_json(Json("x"), "a"), FormatError);
  EXPECT_THROW(io::scalar_from_json(Json::array({1.0}), "a"), FormatError);
  EXPECT_THROW(io::vector_from_json(Json::array(), "x"), FormatError);
}

TEST(Ensembles, RoundTripEveryFamily) {
  const std::vector<Ensemble> all = {
      hankel_ensemble(4),
      minimal_complex_ensemble(3),
      random_ensemble(Field::Real, 3, 5, 0, RandomKind::General, 7),
      random_ensemble(Field::Complex, 3, 4, std::vector<int>{1, 2, 3, 1}, RandomKind::Projection,
                      8),
  };
  for (const Ensemble& e : all) {
    const Json j = io::ensemble_to_json(e);
    const Ensemble back = io::ensemble_from_json(Json::parse(io::dump(j)));
    EXPECT_EQ(back.field(), e.field());
    EXPECT_EQ(back.kind(), e.kind());
    EXPECT_EQ(back.seed(), e.seed());
    EXPECT_EQ(back.ranks(), e.ranks());
    ASSERT_EQ(back.size(), e.size());
    for (int k = 0; k < e.size(); ++k) EXPECT_EQ(back[k], e[k]);
    EXPECT_EQ(io::dump(io::ensemble_to_json(back)), io::dump(j));
  }
}

TEST(Ensembles, KeyOrderAndForms) {
  const Json j = io::ensemble_to_json(hankel_ensemble(2));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"field", "d", "N", "kind", "seed", "matrices"}));
  EXPECT_EQ(j["field"], "R");
  EXPECT_TRUE(j["seed"].is_null());
  EXPECT_TRUE(j["matrices"][0][0][0].is_number());
  const Json c = io::ensemble_to_json(minimal_complex_ensemble(2));
  EXPECT_TRUE(c["matrices"][0][0][0].is_array());
}

TEST(Ensembles, ErrorsCarryThePath) {
  Json j = io::ensemble_to_json(hankel_ensemble(2));
  j["matrices"][0][1][1] = "oops";
  EXPECT_NE(format_error([&] { io::ensemble_from_json(j); }).find("matrices[0][1][1]"),
            std::string::npos);

  j = io::ensemble_to_json(hankel_ensemble(2));
  j["matrices"][1][0][1] = Json::array({0.0, 1.0});
  EXPECT_NE(format_error([&] { io::ensemble_from_json(j); }).find("matrices[1][0][1]"),
            std::string::npos);

  j = io::ensemble_to_json(hankel_ensemble(2));
  j["N"] = 5;
  EXPECT_NE(format_error([&] { io::ensemble_from_json(j); }).find("matrices"), std::string::npos);

  j = io::ensemble_to_json(hankel_ensemble(2));
  j["field"] = "Q";
  EXPECT_THROW(io::ensemble_from_json(j), FormatError);
  j = io::ensemble_to_json(hankel_ensemble(2));
  j["kind"] = "nope";
  EXPECT_THROW(io::ensemble_from_json(j), FormatError);
  j.erase("kind");
  EXPECT_EQ(io::ensemble_from_json(j).kind(), EnsembleKind::Ingested);
  EXPECT_THROW(io::ensemble_from_json(Json::array()), FormatError);
}

TEST_F(TempDir, FilesAndParseErrors) {
  const fs::path p = dir_ / "h.json";
  io::write_ensemble(p, hankel_ensemble(3));
  EXPECT_FALSE(fs::exists(dir_ / "h.json.tmp"));
  EXPECT_EQ(io::read_ensemble(p).size(), 3);

  const fs::path bad = write("bad.json", "{\n  \"field\": \"R\",\n  \"d\": 2,\n  oops\n}\n");
  const std::string msg = format_error([&] { io::read_ensemble(bad); });
  EXPECT_NE(msg.find("bad.json"), std::string::npos);
  EXPECT_NE(msg.find("line 4"), std::string::npos);
  EXPECT_THROW(io::read_ensemble(dir_ / "missing.json"), FormatError);
}

TEST_F(TempDir, SignalsAndMeasurements) {
  EXPECT_EQ(io::read_signal(write("a.json", "[1, 2, 3]")), real_vector({1, 2, 3}));
  EXPECT_EQ(io::read_signal(write("b.json", "{\"x\": [[0, 1], 2]}"))(0), Scalar(0.0, 1.0));
  EXPECT_THROW(io::read_signal(write("c.json", "{\"y\": [1]}")), FormatError);
  EXPECT_EQ(io::read_measurements(write("d.json", "{\"values\": [1, 2.5]}"))(1), 2.5);
  EXPECT_THROW(io::read_measurements(write("e.json", "[1, [0, 1]]")), FormatError);

  MeasurementVector b(3);
  b << 0.1, 1.0 / 3.0, -1e-300;
  const std::string text = io::measurements_to_text(b);
  EXPECT_EQ(text, "[0.10000000000000001, 0.33333333333333331, -1e-300]\n");
  EXPECT_EQ(io::read_measurements(write("f.json", text)), b);
}

TEST_F(TempDir, Frames) {
  Matrix cols(2, 3);
  cols << 1, 0, Scalar(1, 1), 0, 1, 2;
  const Frame f(Field::Complex, cols);
  const fs::path p = write("f.json", io::dump(io::frame_to_json(f)));
  EXPECT_EQ(io::read_frame(p).columns(), cols);
  Json j = io::frame_to_json(f);
  j["columns"][2][0] = "x";
  EXPECT_NE(format_error([&] { io::frame_from_json(j); }).find("columns[2][0]"), std::string::npos);
}

TEST(Reports, Schema) {
  RealMatrix f(2, 3);
  f << 1, 1, 0, 0, 0, 1;
  const CertReport r = real_rank_one_exact(Frame(Field::Real, f.cast<Scalar>()));
  const Json j = io::to_json(r, Field::Real);
  EXPECT_EQ(j["verdict"], "NOT_PR_AE");
  EXPECT_EQ(j["method"], "exact-rank-one");
  ASSERT_EQ(j["witnesses"].size(), 2u);
  EXPECT_EQ(j["witnesses"][0]["type"], "partition");
  EXPECT_EQ(j["witnesses"][0]["I"], Json::array({1, 2}));
  EXPECT_EQ(j["witnesses"][0]["J"], Json::array({3}));
  EXPECT_EQ(j["witnesses"][1]["type"], "collision");
  EXPECT_TRUE(j["witnesses"][1]["valid"].get<bool>());
  EXPECT_TRUE(j["stats"]["trials"].is_number_integer());
  EXPECT_TRUE(j["tolerances"].is_object());
}

TEST(Reports, RecoveryAndValidation) {
  RecoveryResult res;
  res.candidate = real_vector({1, 2});
  res.converged = true;
  const Json j = io::to_json(res, Field::Real);
  EXPECT_FALSE(j.contains("phase_error"));
  EXPECT_EQ(j["candidate"], Json::array({1.0, 2.0}));
  const Json v = io::to_json(validate(hankel_ensemble(3)));
  EXPECT_TRUE(v["pass"].get<bool>());
  EXPECT_EQ(v["matrices"].size(), 3u);
}

}  // namespace
}  // namespace prae
