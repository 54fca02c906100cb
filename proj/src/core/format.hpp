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

#include <string>

#include "ast.hpp"

namespace contestable {

/// Canonical contract text: 2-space indentation, one clause per line,
/// declarations in order, minimal parentheses, each let binding on its own
/// line with the `in` body indented beneath it. Idempotent, and
/// parse_contract(format_contract(c)) is structurally equal to c.
std::string format_contract(const Contract& contract);

/// One-line canonical rendering of a single expression.
std::string format_expr(const Expr& expr);

}  // namespace contestable
