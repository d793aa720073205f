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

#ifndef CNS_MODEL_IO_H_
#define CNS_MODEL_IO_H_

#include <string>

#include "json.hpp"

#include "cns/oda_models.h"

namespace cns {

// Versioned JSON documents. Doubles are written in shortest round-trip
// form, so parameters survive a round trip bit-exactly.
inline constexpr int kModelFormatVersion = 1;

nlohmann::json ToJson(const ReadoutModel& f);
nlohmann::json ToJson(const DynamicsModel& g);
nlohmann::json ToJson(const VectorDistribution& d);

// Throw ValidationError on malformed documents or version mismatch.
ReadoutModel ReadoutModelFromJson(const nlohmann::json& j);
DynamicsModel DynamicsModelFromJson(const nlohmann::json& j);
VectorDistribution VectorDistributionFromJson(const nlohmann::json& j);

nlohmann::json VectorToJson(const RVector& v);
RVector VectorFromJson(const nlohmann::json& j);
nlohmann::json MatrixToJson(const RMatrix& m);
RMatrix MatrixFromJson(const nlohmann::json& j);

}  // namespace cns

#endif  // CNS_MODEL_IO_H_
