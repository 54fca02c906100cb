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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scalar.hpp"
#include "sha256.hpp"

namespace contestable {

using AttrMap = std::map<std::string, Scalar>;  // sorted by key, as canonicalized

/// One record of the append-only decision trace. `hash` covers the
/// canonical bytes of every other field, and `prev_hash` chains to the
/// predecessor (32 zero bytes at seq 0).
struct Event {
    std::uint64_t seq = 0;
    std::int64_t ts_us = 0;  // UTC microseconds since the epoch
    std::string event_type;
    AttrMap attrs;
    std::string algo_version;
    std::int64_t contract_version = 1;
    Hash256 prev_hash{};
    Hash256 hash{};

    bool operator==(const Event&) const = default;
};

struct TraceHeader {
    std::string trace_id;
    std::int64_t created_us = 0;
    std::string scope_key_attr;

    bool operator==(const TraceHeader&) const = default;
};

struct Trace {
    TraceHeader header;
    std::vector<Event> events;

    bool operator==(const Trace&) const = default;
};

/// Deterministic single-line serialization of an event minus its hash:
/// fields in the order (seq, ts, event_type, attrs, algo_version,
/// contract_version, prev_hash); attrs keys sorted by code point; no
/// insignificant whitespace; numbers in shortest round-trip decimal form;
/// ts as RFC-3339 with exactly six fractional digits and 'Z'; prev_hash
/// in lowercase hex.
std::string canonical_bytes(const Event& event);

/// canonical_bytes plus the trailing "hash" field — one stored trace line.
std::string event_line(const Event& event);

/// Header line: {"trace_id":…,"created":…,"scope_key_attr":…}.
std::string header_line(const TraceHeader& header);

Hash256 compute_event_hash(const Event& event);

/// Appends a fully chained event and returns a reference to it.
/// Throws OutOfOrderTimestamp if ts regresses behind the trace tip.
const Event& append_event(Trace& trace, std::int64_t ts_us, std::string event_type, AttrMap attrs,
                          std::string algo_version, std::int64_t contract_version);

enum class IntegrityKind { SeqGap, TsRegress, ChainBreak, HashMismatch };

const char* integrity_kind_name(IntegrityKind k);

struct IntegrityResult {
    bool ok = true;
    std::uint64_t seq = 0;
    IntegrityKind kind = IntegrityKind::SeqGap;

    std::string to_string() const;
};

/// Checks the trace invariants and reports the smallest offending seq.
/// Checks run in phases: dense 0-based seq numbering, non-decreasing
/// timestamps, then the chain (each prev_hash against the hash recomputed
/// from the predecessor's canonical bytes), then each stored hash against
/// its own canonical bytes. Recomputing along the chain pins tampering to
/// the earliest event whose recorded link no longer matches the bytes.
IntegrityResult verify_integrity(const Trace& trace);

/// Prefix containing events 0..seq inclusive. Throws SeqOutOfRange.
Trace slice_until(const Trace& trace, std::uint64_t seq);

/// Line-delimited trace file: header line then one event per line,
/// UTF-8, LF, every line newline-terminated. Throws TraceFormatError
/// with the 1-based offending line.
Trace read_trace(std::istream& in);
void write_trace(const Trace& trace, std::ostream& out);

Trace read_trace_file(const std::string& path);        // adds IO failure context
void write_trace_file(const Trace& trace, const std::string& path);

/// Parse one stored event line (with hash). Used by the streaming monitor.
Event parse_event_line(const std::string& line, std::size_t line_no);

/// True if the line is a trace header record rather than an event.
bool looks_like_header(const std::string& line);

}  // namespace contestable
