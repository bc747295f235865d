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

#ifndef MGVAL_IO_HPP_
#define MGVAL_IO_HPP_

#include <string>

#include "json.hpp"
#include "mgval/game_model.hpp"
#include "mgval/limit_solver.hpp"
#include "mgval/simulator.hpp"
#include "mgval/verification.hpp"

namespace mgval {

using Json = nlohmann::ordered_json;

// Game-spec files: {"name"?, "matrix_s1", "matrix_s2", "lambda1",
// "lambda2", "r"}. Unknown keys are rejected.
RawGame GameFromJson(const Json& j);
Json GameToJson(const GameSpec& spec);
ValidatedGame LoadGame(const std::string& path);

Json SolutionToJson(const Solution& sol);
// Rebuilds the value function written by SolutionToJson; `params` come
// from the matching game spec.
PiecewiseValue ValueFromJson(const Json& j, const DerivedParams& params);

Json CharReportToJson(const CharReport& rep);
Json OracleSummaryToJson(const OracleGrid& og);
Json EstimateToJson(const ValueEstimate& est);

// CSV with 17 significant digits. `pv` may be null (no v column).
std::string CurveCsv(const UOracle& oracle, const ConcaveEnvelope& env,
                     const PiecewiseValue* pv, std::size_t points);
std::string OracleCsv(const OracleGrid& og);
std::string TrajectoryCsv(const BeliefTrajectory& tr);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);
Json ReadJsonFile(const std::string& path);

}  // namespace mgval

#endif  // MGVAL_IO_HPP_
