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
#include <vector>

#include "ast.hpp"

namespace contestable {

struct Diagnostic {
    std::string norm_id;  // empty for contract-level findings
    std::string message;
};

/// Static checks: contract invariants, variable binding, source/column
/// resolution, and kind checking of every expression. Returns an empty
/// list iff the contract is well-formed.
std::vector<Diagnostic> validate_contract(const Contract& contract);

std::string diagnostic_to_string(const Diagnostic& d);

}  // namespace contestable
