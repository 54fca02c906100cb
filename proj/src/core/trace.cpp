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

#include "trace.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace contestable {

namespace {

using json = nlohmann::json;

void append_field_name(std::string& out, const char* name) {
    out += '"';
    out += name;
    out += "\":";
}

Scalar scalar_from_json(const json& v, std::size_t line_no, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        auto s = v.get<std::string>();
        // A string shaped exactly like YYYY-MM-DD is a date on the wire.
        if (auto d = parse_date(s)) return *d;
        return s;
    }
    throw TraceFormatError(line_no, "attribute '" + key + "' is not a scalar");
}

double require_finite(double v, const std::string& context) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite number in " + context);
    }
    return v;
}

}  // namespace

std::string canonical_bytes(const Event& e) {
    std::string out;
    out.reserve(192 + 32 * e.attrs.size());
    out += '{';
    append_field_name(out, "seq");
    out += std::to_string(e.seq);
    out += ',';
    append_field_name(out, "ts");
    out += '"';
    out += format_rfc3339_micros(e.ts_us);
    out += "\",";
    append_field_name(out, "event_type");
    out += '"';
    append_json_escaped(out, e.event_type);
    out += "\",";
    append_field_name(out, "attrs");
    out += '{';
    bool first = true;
    for (const auto& [key, value] : e.attrs) {
        if (!first) out += ',';
        first = false;
        out += '"';
        append_json_escaped(out, key);
        out += "\":";
        if (scalar_kind(value) == ScalarKind::Number) {
            require_finite(std::get<double>(value), "attribute '" + key + "'");
        }
        append_canonical_scalar(out, value);
    }
    out += "},";
    append_field_name(out, "algo_version");
    out += '"';
    append_json_escaped(out, e.algo_version);
    out += "\",";
    append_field_name(out, "contract_version");
    out += std::to_string(e.contract_version);
    out += ',';
    append_field_name(out, "prev_hash");
    out += '"';
    out += to_hex(e.prev_hash);
    out += "\"}";
    return out;
}

std::string event_line(const Event& e) {
    std::string out = canonical_bytes(e);
    out.pop_back();  // reopen the record for the trailing hash field
    out += ',';
    append_field_name(out, "hash");
    out += '"';
    out += to_hex(e.hash);
    out += "\"}";
    return out;
}

std::string header_line(const TraceHeader& h) {
    std::string out = "{";
    append_field_name(out, "trace_id");
    out += '"';
    append_json_escaped(out, h.trace_id);
    out += "\",";
    append_field_name(out, "created");
    out += '"';
    out += format_rfc3339_micros(h.created_us);
    out += "\",";
    append_field_name(out, "scope_key_attr");
    out += '"';
    append_json_escaped(out, h.scope_key_attr);
    out += "\"}";
    return out;
}

Hash256 compute_event_hash(const Event& e) {
    return sha256(canonical_bytes(e));
}

const Event& append_event(Trace& trace, std::int64_t ts_us, std::string event_type, AttrMap attrs,
                          std::string algo_version, std::int64_t contract_version) {
    if (!trace.events.empty() && ts_us < trace.events.back().ts_us) {
        throw OutOfOrderTimestamp("event timestamp " + format_rfc3339_micros(ts_us) +
                                  " is earlier than trace tip " +
                                  format_rfc3339_micros(trace.events.back().ts_us));
    }
    Event e;
    e.seq = trace.events.size();
    e.ts_us = ts_us;
    e.event_type = std::move(event_type);
    e.attrs = std::move(attrs);
    e.algo_version = std::move(algo_version);
    e.contract_version = contract_version;
    e.prev_hash = trace.events.empty() ? kZeroHash : trace.events.back().hash;
    e.hash = compute_event_hash(e);
    trace.events.push_back(std::move(e));
    return trace.events.back();
}

const char* integrity_kind_name(IntegrityKind k) {
    switch (k) {
        case IntegrityKind::SeqGap: return "seq-gap";
        case IntegrityKind::TsRegress: return "ts-regress";
        case IntegrityKind::ChainBreak: return "chain-break";
        case IntegrityKind::HashMismatch: return "hash-mismatch";
    }
    return "?";
}

std::string IntegrityResult::to_string() const {
    if (ok) return "ok";
    return std::string(integrity_kind_name(kind)) + " at seq " + std::to_string(seq);
}

IntegrityResult verify_integrity(const Trace& trace) {
    const auto& events = trace.events;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].seq != i) {
            return {false, i, IntegrityKind::SeqGap};
        }
    }
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].ts_us < events[i - 1].ts_us) {
            return {false, i, IntegrityKind::TsRegress};
        }
    }
    Hash256 expected_prev = kZeroHash;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].prev_hash != expected_prev) {
            return {false, i, IntegrityKind::ChainBreak};
        }
        expected_prev = compute_event_hash(events[i]);
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].hash != compute_event_hash(events[i])) {
            return {false, i, IntegrityKind::HashMismatch};
        }
    }
    return {};
}

Trace slice_until(const Trace& trace, std::uint64_t seq) {
    if (seq >= trace.events.size()) {
        throw SeqOutOfRange("seq " + std::to_string(seq) + " outside trace of length " +
                            std::to_string(trace.events.size()));
    }
    Trace prefix;
    prefix.header = trace.header;
    prefix.events.assign(trace.events.begin(), trace.events.begin() + static_cast<long>(seq) + 1);
    return prefix;
}

bool looks_like_header(const std::string& line) {
    json v = json::parse(line, nullptr, false);
    return v.is_object() && v.contains("trace_id");
}

Event parse_event_line(const std::string& line, std::size_t line_no) {
    json v = json::parse(line, nullptr, false);
    if (v.is_discarded() || !v.is_object()) {
        throw TraceFormatError(line_no, "not a JSON event record");
    }
    static const char* kFields[] = {"seq",          "ts",        "event_type", "attrs",
                                    "algo_version", "contract_version", "prev_hash", "hash"};
    for (const char* f : kFields) {
        if (!v.contains(f)) throw TraceFormatError(line_no, std::string("missing field '") + f + "'");
    }
    if (v.size() != 8) throw TraceFormatError(line_no, "unexpected extra fields");
    Event e;
    if (!v["seq"].is_number_unsigned()) throw TraceFormatError(line_no, "seq is not a non-negative integer");
    e.seq = v["seq"].get<std::uint64_t>();
    if (!v["ts"].is_string()) throw TraceFormatError(line_no, "ts is not a string");
    auto ts = parse_rfc3339_micros(v["ts"].get<std::string>());
    if (!ts) throw TraceFormatError(line_no, "ts is not an RFC-3339 microsecond timestamp");
    e.ts_us = *ts;
    if (!v["event_type"].is_string()) throw TraceFormatError(line_no, "event_type is not a string");
    e.event_type = v["event_type"].get<std::string>();
    if (!v["attrs"].is_object()) throw TraceFormatError(line_no, "attrs is not an object");
    for (auto it = v["attrs"].begin(); it != v["attrs"].end(); ++it) {
        e.attrs.emplace(it.key(), scalar_from_json(it.value(), line_no, it.key()));
    }
    if (!v["algo_version"].is_string()) throw TraceFormatError(line_no, "algo_version is not a string");
    e.algo_version = v["algo_version"].get<std::string>();
    if (!v["contract_version"].is_number_integer()) {
        throw TraceFormatError(line_no, "contract_version is not an integer");
    }
    e.contract_version = v["contract_version"].get<std::int64_t>();
    for (const char* f : {"prev_hash", "hash"}) {
        if (!v[f].is_string()) throw TraceFormatError(line_no, std::string(f) + " is not a string");
        auto h = from_hex(v[f].get<std::string>());
        if (!h) throw TraceFormatError(line_no, std::string(f) + " is not 64 lowercase hex digits");
        (std::string(f) == "prev_hash" ? e.prev_hash : e.hash) = *h;
    }
    return e;
}

Trace read_trace(std::istream& in) {
    std::string content(std::istreambuf_iterator<char>(in), {});
    if (content.empty()) {
        throw TraceFormatError(1, "empty trace file, expected a header line");
    }
    if (content.back() != '\n') {
        std::size_t lines = 1 + static_cast<std::size_t>(
                                    std::count(content.begin(), content.end(), '\n'));
        throw TraceFormatError(lines, "truncated line (missing trailing newline)");
    }
    Trace trace;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string line = content.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line_no == 1) {
            json v = json::parse(line, nullptr, false);
            if (v.is_discarded() || !v.is_object() || !v.contains("trace_id") ||
                !v.contains("created") || !v.contains("scope_key_attr") || v.size() != 3 ||
                !v["trace_id"].is_string() || !v["created"].is_string() ||
                !v["scope_key_attr"].is_string()) {
                throw TraceFormatError(1, "malformed trace header");
            }
            auto created = parse_rfc3339_micros(v["created"].get<std::string>());
            if (!created) throw TraceFormatError(1, "header 'created' is not an RFC-3339 timestamp");
            trace.header = {v["trace_id"].get<std::string>(), *created,
                            v["scope_key_attr"].get<std::string>()};
        } else {
            trace.events.push_back(parse_event_line(line, line_no));
        }
    }
    return trace;
}

void write_trace(const Trace& trace, std::ostream& out) {
    out << header_line(trace.header) << '\n';
    for (const auto& e : trace.events) {
        out << event_line(e) << '\n';
    }
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open trace file '" + path + "'");
    }
    return read_trace(in);
}

void write_trace_file(const Trace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write trace file '" + path + "'");
    }
    write_trace(trace, out);
}

}  // namespace contestable
