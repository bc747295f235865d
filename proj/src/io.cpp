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

#include "mgval/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mgval/common.hpp"

namespace mgval {
namespace {

using Code = ValidationError::Code;

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::vector<double>> MatrixFromJson(const Json& j,
                                                const std::string& key) {
  if (!j.is_array()) {
    throw ValidationError(Code::kBadType, key + " must be an array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (const Json& row : j) {
    if (!row.is_array()) {
      throw ValidationError(Code::kBadType, key + " rows must be arrays");
    }
    std::vector<double>& out = rows.emplace_back();
    for (const Json& x : row) {
      if (!x.is_number()) {
        throw ValidationError(Code::kBadType, key + " entries must be numbers");
      }
      out.push_back(x.get<double>());
    }
  }
  return rows;
}

double NumberAt(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw ValidationError(Code::kMissingKey, "missing key " + key);
  if (!j[key].is_number()) {
    throw ValidationError(Code::kBadType, key + " must be a number");
  }
  return j[key].get<double>();
}

Json StepsToJson(const std::vector<TraceStep>& steps) {
  Json out = Json::array();
  for (const TraceStep& s : steps) {
    out.push_back({{"from", s.from}, {"to", s.to}, {"kind", ToString(s.kind)},
                   {"slope", s.slope}});
  }
  return out;
}

}  // namespace

RawGame GameFromJson(const Json& j) {
  if (!j.is_object()) {
    throw ValidationError(Code::kBadType, "game spec must be a JSON object");
  }
  static const std::set<std::string> kKeys{"name",    "matrix_s1", "matrix_s2",
                                           "lambda1", "lambda2",   "r"};
  for (const auto& item : j.items()) {
    if (!kKeys.count(item.key())) {
      throw ValidationError(Code::kUnknownKey, "unknown key " + item.key());
    }
  }
  RawGame raw;
  if (j.contains("name")) {
    if (!j["name"].is_string()) {
      throw ValidationError(Code::kBadType, "name must be a string");
    }
    raw.name = j["name"].get<std::string>();
  }
  for (const char* key : {"matrix_s1", "matrix_s2"}) {
    if (!j.contains(key)) {
      throw ValidationError(Code::kMissingKey, std::string("missing key ") + key);
    }
  }
  raw.matrix_s1 = MatrixFromJson(j["matrix_s1"], "matrix_s1");
  raw.matrix_s2 = MatrixFromJson(j["matrix_s2"], "matrix_s2");
  raw.lambda1 = NumberAt(j, "lambda1");
  raw.lambda2 = NumberAt(j, "lambda2");
  raw.r = NumberAt(j, "r");
  return raw;
}

Json GameToJson(const GameSpec& spec) {
  Json j;
  if (spec.name) j["name"] = *spec.name;
  j["matrix_s1"] = spec.matrix_s1.ToRows();
  j["matrix_s2"] = spec.matrix_s2.ToRows();
  j["lambda1"] = spec.lambda1;
  j["lambda2"] = spec.lambda2;
  j["r"] = spec.r;
  return j;
}

ValidatedGame LoadGame(const std::string& path) {
  return ValidateSpec(GameFromJson(ReadJsonFile(path)));
}

Json SolutionToJson(const Solution& sol) {
  const PiecewiseValue& pv = sol.value;
  const Initialization& init = pv.initialization();
  Json j;
  if (sol.oracle.spec().name) j["name"] = *sol.oracle.spec().name;
  j["p_star"] = pv.params().p_star;
  j["mu"] = pv.params().mu;
  Json vertices = Json::array();
  for (std::size_t i = 0; i < sol.envelope.xs.size(); ++i) {
    vertices.push_back({sol.envelope.xs[i], sol.envelope.ys[i]});
  }
  j["initialization"] = {{"p_tilde0", init.p_tilde0},
                         {"p0", init.p0},
                         {"slope", init.slope},
                         {"intercept", init.intercept},
                         {"envelope_vertices", vertices}};
  Json segs = Json::array();
  for (const Segment& s : pv.segments()) {
    Json js{{"lo", s.lo}, {"hi", s.hi}, {"kind", ToString(s.kind)}};
    if (s.affine()) {
      js["slope"] = s.slope;
      js["intercept"] = s.intercept;
    } else {
      Json samples = Json::array();
      for (const CurveNode& n : s.samples) samples.push_back({n.p, n.v, n.dv});
      js["samples"] = std::move(samples);
    }
    if (s.jump_target) js["jump_target"] = *s.jump_target;
    segs.push_back(std::move(js));
  }
  j["segments"] = std::move(segs);
  j["trace"] = {{"p_tilde0", sol.trace.p_tilde0},
                {"p0", sol.trace.p0},
                {"increasing", StepsToJson(sol.trace.increasing)},
                {"decreasing", StepsToJson(sol.trace.decreasing)},
                {"diagnostics", sol.trace.diagnostics}};
  return j;
}

PiecewiseValue ValueFromJson(const Json& j, const DerivedParams& params) {
  try {
    for (const char* key : {"initialization", "segments"}) {
      if (!j.contains(key)) {
        throw ValidationError(Code::kMissingKey,
                              std::string("solution lacks ") + key);
      }
    }
    const Json& ji = j.at("initialization");
    Initialization init;
    init.p_tilde0 = ji.at("p_tilde0").get<double>();
    init.p0 = ji.at("p0").get<double>();
    init.slope = ji.at("slope").get<double>();
    init.intercept = ji.at("intercept").get<double>();
    std::vector<Segment> segs;
    for (const Json& js : j.at("segments")) {
      Segment s;
      s.lo = js.at("lo").get<double>();
      s.hi = js.at("hi").get<double>();
      s.kind = SegmentKindFromString(js.at("kind").get<std::string>());
      if (s.affine()) {
        s.slope = js.at("slope").get<double>();
        s.intercept = js.at("intercept").get<double>();
      } else {
        for (const Json& n : js.at("samples")) {
          s.samples.push_back(
              {n.at(0).get<double>(), n.at(1).get<double>(), n.at(2).get<double>()});
        }
        if (s.samples.size() < 2) {
          throw ValidationError(Code::kBadType, "nonlinear segment needs samples");
        }
      }
      if (js.contains("jump_target")) s.jump_target = js["jump_target"].get<double>();
      segs.push_back(std::move(s));
    }
    PiecewiseValue pv(std::move(segs), params, init);
    if (!pv.Tiles()) {
      throw ValidationError(Code::kOutOfRange, "solution segments do not tile [0, 1]");
    }
    return pv;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(Code::kBadType, std::string("malformed solution: ") + e.what());
  }
}

Json CharReportToJson(const CharReport& rep) {
  Json viol = Json::array();
  for (const ConcavityViolation& v : rep.concavity_violations) {
    viol.push_back({{"p", {v.a, v.b, v.c}}, {"residual", v.residual}});
  }
  return {{"pass", rep.pass},
          {"concavity_violations", viol},
          {"g1_residual", rep.g1_residual},
          {"g1_equality_required", rep.g1_equality},
          {"g2_worst", {{"p", rep.g2_worst.p}, {"residual", rep.g2_worst.residual}}},
          {"g3_worst", {{"p", rep.g3_worst.p}, {"residual", rep.g3_worst.residual}}},
          {"extreme_points_checked", rep.extreme_points_checked},
          {"kink_locations", rep.kink_locations}};
}

Json OracleSummaryToJson(const OracleGrid& og) {
  return {{"n", og.n},
          {"grid_size", og.grid.size()},
          {"iterations", og.iterations},
          {"residual", og.residual},
          {"modulus", og.modulus},
          {"worst_ratio", og.worst_ratio},
          {"concave_throughout", og.concave_throughout}};
}

Json EstimateToJson(const ValueEstimate& est) {
  return {{"p_init", est.p_init},
          {"mean", est.mean},
          {"stderr", est.std_error},
          {"tail_bound", est.tail_bound},
          {"num_traj", est.num_traj},
          {"horizon", est.horizon}};
}

std::string CurveCsv(const UOracle& oracle, const ConcaveEnvelope& env,
                     const PiecewiseValue* pv, std::size_t points) {
  std::ostringstream out;
  out << (pv ? "p,u,cav_u,v\n" : "p,u,cav_u\n");
  const std::size_t m = std::max<std::size_t>(points, 2);
  for (std::size_t i = 0; i < m; ++i) {
    const double p = double(i) / double(m - 1);
    out << Num(p) << ',' << Num(oracle(p)) << ',' << Num(env.Eval(p));
    if (pv) out << ',' << Num(pv->Value(p));
    out << '\n';
  }
  return out.str();
}

std::string OracleCsv(const OracleGrid& og) {
  std::ostringstream out;
  out << "p,v_n\n";
  for (std::size_t i = 0; i < og.grid.size(); ++i) {
    out << Num(og.grid[i]) << ',' << Num(og.values[i]) << '\n';
  }
  return out.str();
}

std::string TrajectoryCsv(const BeliefTrajectory& tr) {
  std::ostringstream out;
  out << "t,p,event\n";
  for (const TrajectoryEvent& e : tr.events) {
    out << Num(e.time) << ',' << Num(e.belief) << ',' << ToString(e.kind) << '\n';
  }
  return out.str();
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

Json ReadJsonFile(const std::string& path) {
  const std::string text = ReadTextFile(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(Code::kBadType, path + ": " + e.what());
  }
}

}  // namespace mgval
