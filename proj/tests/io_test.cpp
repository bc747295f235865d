// Copyright 2026 The mgval Authors.
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

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "mgval/common.hpp"
#include "mgval/io.hpp"
#include "test_support.hpp"

namespace mgval {
namespace {

using Code = ValidationError::Code;

Code CodeOf(const std::string& text) {
  try {
    GameFromJson(Json::parse(text));
  } catch (const ValidationError& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted " << text;
  return Code::kOutOfRange;
}

TEST(IoTest, ParsesABundledGame) {
  const ValidatedGame g = LoadGame(testing::GamesDir() + "/example3a.json");
  EXPECT_EQ(g.spec.matrix_s1, testing::MixedA().matrix_s1);
  EXPECT_DOUBLE_EQ(g.params.p_star, 0.25);
  EXPECT_TRUE(g.spec.name.has_value());
}

TEST(IoTest, SchemaErrors) {
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [[1]], "matrix_s2": [[1]], "lambda1": 1, "lambda2": 1, "r": 1, "gamma": 2})"),
            Code::kUnknownKey);
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [[1]], "lambda1": 1, "lambda2": 1, "r": 1})"), Code::kMissingKey);
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [[1]], "matrix_s2": [[1]], "lambda2": 1, "r": 1})"), Code::kMissingKey);
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [["a"]], "matrix_s2": [[1]], "lambda1": 1, "lambda2": 1, "r": 1})"),
            Code::kBadType);
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [1], "matrix_s2": [[1]], "lambda1": 1, "lambda2": 1, "r": 1})"),
            Code::kBadType);
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [[1]], "matrix_s2": [[1]], "lambda1": "1", "lambda2": 1, "r": 1})"),
            Code::kBadType);
  EXPECT_EQ(CodeOf(R"({"matrix_s1": [[1]], "matrix_s2": [[1]], "lambda1": 1, "lambda2": 1, "r": 1, "name": 3})"),
            Code::kBadType);
  EXPECT_EQ(CodeOf("[1, 2]"), Code::kBadType);
}

TEST(IoTest, GameJsonRoundTrip) {
  const GameSpec g = testing::MixedB();
  const GameSpec back = ValidateSpec(GameFromJson(GameToJson(g))).spec;
  EXPECT_EQ(back.matrix_s2, g.matrix_s2);
  EXPECT_EQ(back.lambda1, g.lambda1);
  EXPECT_EQ(back.lambda2, g.lambda2);
}

TEST(IoTest, MissingFileIsAnIoError) {
  EXPECT_THROW(LoadGame("/nonexistent/game.json"), IoError);
}

TEST(IoTest, SolutionJsonRoundTrip) {
  const Solution sol = SolveLimitValue(testing::Mixed());
  const Json j = Json::parse(SolutionToJson(sol).dump());
  EXPECT_EQ(j["segments"].size(), 3u);
  EXPECT_EQ(j["segments"][1]["kind"], "nonlinear");
  EXPECT_TRUE(j["segments"][2].contains("jump_target"));
  EXPECT_FALSE(j["segments"][1].contains("slope"));
  EXPECT_TRUE(j["initialization"].contains("envelope_vertices"));
  const PiecewiseValue back = ValueFromJson(j, sol.value.params());
  for (int i = 0; i <= 100; ++i) {
    EXPECT_EQ(back.Value(i / 100.0), sol.value.Value(i / 100.0));
  }
  Json broken = j;
  broken["segments"].erase(1);
  EXPECT_THROW(ValueFromJson(broken, sol.value.params()), ValidationError);
  broken = j;
  broken["segments"][0]["lo"] = "zero";
  EXPECT_THROW(ValueFromJson(broken, sol.value.params()), ValidationError);
}

TEST(IoTest, CsvUsesFullPrecision) {
  const Solution sol = SolveLimitValue(testing::Nonrevealing());
  const std::string csv = CurveCsv(sol.oracle, sol.envelope, &sol.value, 4);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "p,u,cav_u,v");
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 19), "0.33333333333333331");
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3u);
}

}  // namespace
}  // namespace mgval
