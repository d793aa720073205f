// Copyright 2026 The Cognitive Neurosecurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cns/model_io.h"

namespace cns {
namespace {

using nlohmann::json;

void CheckHeader(const json& j, const char* type) {
  if (!j.is_object() || j.value("type", "") != type) {
    throw ValidationError(std::string("expected a '") + type + "' document");
  }
  if (j.value("version", -1) != kModelFormatVersion) {
    throw ValidationError(std::string(type) + ": unsupported format version");
  }
}

template <typename Fn>
auto Guard(const char* what, Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json VectorToJson(const RVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RVector VectorFromJson(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a numeric array");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

json MatrixToJson(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(VectorToJson(m.row(r).transpose()));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

RMatrix MatrixFromJson(const json& j) {
  auto rows = j.at("rows").get<Eigen::Index>();
  auto cols = j.at("cols").get<Eigen::Index>();
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows) {
    throw ValidationError("matrix: row count mismatch");
  }
  RMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    RVector row = VectorFromJson(data[static_cast<std::size_t>(r)]);
    if (row.size() != cols) throw ValidationError("matrix: column count mismatch");
    m.row(r) = row.transpose();
  }
  return m;
}

json ToJson(const ReadoutModel& f) {
  json j = {{"type", "readout-model"},
            {"version", kModelFormatVersion},
            {"name", f.name},
            {"oda_level", ToString(f.oda_level)},
            {"kind", ToString(f.kind)},
            {"input_dimension", f.input_dimension},
            {"weights", MatrixToJson(f.weights)},
            {"bias", VectorToJson(f.bias)},
            {"temperature", f.temperature},
            {"flagged", f.flagged}};
  j["feature_subset"] = f.feature_subset ? json(*f.feature_subset) : json(nullptr);
  return j;
}

ReadoutModel ReadoutModelFromJson(const json& j) {
  CheckHeader(j, "readout-model");
  return Guard("readout-model", [&] {
    ReadoutModel f;
    f.name = j.at("name").get<std::string>();
    f.oda_level = ParseOdaLevel(j.at("oda_level").get<std::string>());
    f.kind = ParseReadoutKind(j.at("kind").get<std::string>());
    f.input_dimension = j.at("input_dimension").get<std::size_t>();
    f.weights = MatrixFromJson(j.at("weights"));
    f.bias = VectorFromJson(j.at("bias"));
    f.temperature = j.at("temperature").get<double>();
    f.flagged = j.at("flagged").get<bool>();
    if (!j.at("feature_subset").is_null()) {
      f.feature_subset = j.at("feature_subset").get<std::vector<std::size_t>>();
    }
    f.Validate();
    return f;
  });
}

json ToJson(const DynamicsModel& g) {
  return {{"type", "dynamics-model"},
          {"version", kModelFormatVersion},
          {"name", g.name},
          {"oda_level", ToString(g.oda_level)},
          {"cogit_dimension", g.cogit_dimension},
          {"input_dimension", g.input_dimension},
          {"weights", MatrixToJson(g.weights)},
          {"offset", VectorToJson(g.offset)}};
}

DynamicsModel DynamicsModelFromJson(const json& j) {
  CheckHeader(j, "dynamics-model");
  return Guard("dynamics-model", [&] {
    DynamicsModel g;
    g.name = j.at("name").get<std::string>();
    g.oda_level = ParseOdaLevel(j.at("oda_level").get<std::string>());
    g.cogit_dimension = j.at("cogit_dimension").get<std::size_t>();
    g.input_dimension = j.at("input_dimension").get<std::size_t>();
    g.weights = MatrixFromJson(j.at("weights"));
    g.offset = VectorFromJson(j.at("offset"));
    g.Validate();
    return g;
  });
}

json ToJson(const VectorDistribution& d) {
  json j = {{"type", "vector-distribution"}, {"version", kModelFormatVersion}};
  if (d.kind() == VectorDistribution::Kind::kGaussianDiagonal) {
    j["kind"] = "gaussian-diagonal";
    j["mean"] = VectorToJson(d.mean());
    j["scale"] = VectorToJson(d.scale());
  } else {
    j["kind"] = "empirical";
    json s = json::array();
    for (const auto& x : d.samples()) s.push_back(VectorToJson(x));
    j["samples"] = s;
  }
  return j;
}

VectorDistribution VectorDistributionFromJson(const json& j) {
  CheckHeader(j, "vector-distribution");
  return Guard("vector-distribution", [&] {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian-diagonal") {
      return VectorDistribution::Gaussian(VectorFromJson(j.at("mean")),
                                          VectorFromJson(j.at("scale")));
    }
    if (kind == "empirical") {
      std::vector<RVector> s;
      for (const auto& x : j.at("samples")) s.push_back(VectorFromJson(x));
      return VectorDistribution::Empirical(std::move(s));
    }
    throw ValidationError("vector-distribution: unknown kind '" + kind + "'");
  });
}

}  // namespace cns
