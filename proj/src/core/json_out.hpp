// Copyright 2026 The contestable authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <nlohmann/json.hpp>

#include "eval.hpp"
#include "scalar.hpp"

namespace contestable {

using ojson = nlohmann::ordered_json;

/// Scalars in machine-readable documents: numbers and booleans natively,
/// dates as "YYYY-MM-DD" strings, strings as-is.
ojson scalar_to_json(const Scalar& s);
Scalar scalar_from_report_json(const nlohmann::json& v);

ojson result_to_json(const NormInstanceResult& r);
NormInstanceResult result_from_json(const nlohmann::json& v);

}  // namespace contestable
