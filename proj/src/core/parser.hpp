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

#include <string_view>

#include "ast.hpp"

namespace contestable {

/// Parse contract text into its AST. Deterministic and total over valid
/// inputs; throws ParseError (1-based line/column of the first offending
/// token plus an expected-token set) otherwise.
Contract parse_contract(std::string_view text);

}  // namespace contestable
