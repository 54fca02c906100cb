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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace contestable {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Contract text does not conform to the grammar. Position is 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int col, std::string message, std::vector<std::string> expected)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line(line), col(col), detail(std::move(message)), expected(std::move(expected)) {}

    int line;
    int col;
    std::string detail;
    std::vector<std::string> expected;  // expected-token set at the offending position
};

/// A trace or history file line that does not match the on-disk format.
class TraceFormatError : public Error {
public:
    TraceFormatError(std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line(line) {}

    std::size_t line;
};

/// Appending an event whose timestamp regresses behind the trace tip.
class OutOfOrderTimestamp : public Error {
public:
    using Error::Error;
};

/// A sequence number outside the trace.
class SeqOutOfRange : public Error {
public:
    using Error::Error;
};

/// Trigger matched an event by type but a binder attribute is absent;
/// signals a trace/contract mismatch rather than a norm outcome.
class MissingAttribute : public Error {
public:
    using Error::Error;
};

/// A streamed event does not chain onto the monitor's prefix.
class ChainError : public Error {
public:
    using Error::Error;
};

/// Simulator configuration violates its invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The contested decision was taken under a different contract version.
class VersionMismatch : public Error {
public:
    using Error::Error;
};

/// The decision event cannot anchor the requested scope.
class ScopeError : public Error {
public:
    using Error::Error;
};

}  // namespace contestable
