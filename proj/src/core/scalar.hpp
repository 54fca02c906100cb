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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace contestable {

/// Calendar date (UTC, proleptic Gregorian).
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..days-in-month

    auto operator<=>(const Date&) const = default;
};

/// The four scalar kinds the contract language and traces share.
enum class ScalarKind { Number, String, Date, Bool };

using Scalar = std::variant<double, std::string, Date, bool>;

ScalarKind scalar_kind(const Scalar& s);
const char* kind_name(ScalarKind k);
std::optional<ScalarKind> kind_from_name(std::string_view name);

/// Shortest decimal form that round-trips the double exactly (e.g. 0.3, 2, 1e+20).
std::string format_number(double value);

bool is_valid_date(int year, int month, int day);
std::optional<Date> parse_date(std::string_view text);  // strict YYYY-MM-DD
std::string format_date(const Date& d);

/// Days since 1970-01-01 (proleptic Gregorian, negative before the epoch).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);

/// RFC-3339 with exactly six fractional digits and a trailing Z.
std::string format_rfc3339_micros(std::int64_t micros_since_epoch);
std::optional<std::int64_t> parse_rfc3339_micros(std::string_view text);  // strict

/// Calendar date of the UTC instant.
Date date_of_micros(std::int64_t micros_since_epoch);

/// Append `text` JSON-escaped (quotes, backslash, control characters).
void append_json_escaped(std::string& out, std::string_view text);

/// Canonical single-token text of a scalar as it appears in trace records:
/// numbers in shortest round-trip form, strings and dates quoted, booleans
/// as true/false. Dates serialize as "YYYY-MM-DD" strings; on the wire a
/// string of exactly that shape is a date.
void append_canonical_scalar(std::string& out, const Scalar& s);

/// Human-readable rendering (unquoted strings), for diagnostics.
std::string scalar_to_display(const Scalar& s);

}  // namespace contestable
