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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ast.hpp"
#include "scalar.hpp"
#include "sha256.hpp"

namespace contestable {

/// External reference data consumed by aggregate expressions. Rows are
/// kept in file order; every row carries one scalar of the declared kind
/// per declared column.
struct HistoryTable {
    std::vector<std::string> columns;
    std::vector<ScalarKind> kinds;
    std::vector<std::vector<Scalar>> rows;

    bool operator==(const HistoryTable&) const = default;

    /// Column index by name, or -1.
    int column_index(const std::string& name) const;
};

using SourceMap = std::map<std::string, HistoryTable>;

/// Empty table with the declared column layout.
HistoryTable empty_history(const SourceDecl& decl);

/// CSV with a header row naming the declared columns (any order), dates
/// as YYYY-MM-DD, numbers plain decimal. Fields may be double-quoted.
/// Throws TraceFormatError with the 1-based offending line.
HistoryTable read_history_csv(std::istream& in, const SourceDecl& decl);
HistoryTable read_history_csv_file(const std::string& path, const SourceDecl& decl);

/// Canonical CSV serialization (declared column order, minimal quoting).
std::string history_to_csv(const HistoryTable& table);
void write_history_csv_file(const HistoryTable& table, const std::string& path);

/// SHA-256 over the canonical CSV of every table, concatenated in source
/// name order, each preceded by its name and a newline. Lets both parties
/// to a contest pin down exactly which reference data was used.
Hash256 history_content_hash(const SourceMap& sources);

}  // namespace contestable
