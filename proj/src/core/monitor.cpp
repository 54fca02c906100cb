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

#include "monitor.hpp"

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace contestable {

EventDraft parse_draft_line(const std::string& line, std::size_t line_no) {
    nlohmann::json v = nlohmann::json::parse(line, nullptr, false);
    if (v.is_discarded() || !v.is_object()) {
        throw TraceFormatError(line_no, "not a JSON event record");
    }
    // Accept full stored lines too; the chain fields are recomputed anyway.
    nlohmann::json stripped = v;
    stripped.erase("prev_hash");
    stripped.erase("hash");
    stripped["prev_hash"] = to_hex(kZeroHash);
    stripped["hash"] = to_hex(kZeroHash);
    Event e = parse_event_line(stripped.dump(), line_no);
    return EventDraft{e.seq, e.ts_us, std::move(e.event_type), std::move(e.attrs),
                      std::move(e.algo_version), e.contract_version};
}

Monitor::Monitor(const Contract& contract, SourceMap sources, MonitorMode mode)
    : contract_(contract), sources_(std::move(sources)), mode_(mode) {
    trace_.header = {"monitor", 0, ""};
}

std::vector<NormInstanceResult> Monitor::evaluate_tip() {
    std::span<const Event> events{trace_.events};
    const Event& tip = trace_.events.back();
    std::vector<NormInstanceResult> results;
    for (const NormDef& norm : contract_.norms) {
        if (match_trigger(norm, tip)) {
            results.push_back(evaluate_norm_instance(norm, tip, events, sources_));
        }
    }
    return results;
}

std::vector<NormInstanceResult> Monitor::step_observe(const Event& event) {
    if (mode_ != MonitorMode::Observe) {
        throw ChainError("monitor is not in observe mode");
    }
    if (event.seq != trace_.events.size()) {
        throw ChainError("event seq " + std::to_string(event.seq) + " does not extend prefix of length " +
                         std::to_string(trace_.events.size()));
    }
    const Hash256& tip_hash = trace_.events.empty() ? kZeroHash : trace_.events.back().hash;
    if (event.prev_hash != tip_hash) {
        throw ChainError("event prev_hash does not match the prefix tip at seq " +
                         std::to_string(event.seq));
    }
    if (!trace_.events.empty() && event.ts_us < trace_.events.back().ts_us) {
        throw ChainError("event timestamp regresses at seq " + std::to_string(event.seq));
    }
    if (event.hash != compute_event_hash(event)) {
        throw ChainError("event hash does not match its canonical bytes at seq " +
                         std::to_string(event.seq));
    }
    trace_.events.push_back(event);
    auto results = evaluate_tip();
    emitted_ += results.size();
    return results;
}

Monitor::RegimentOutcome Monitor::step_regiment(const EventDraft& draft) {
    if (mode_ != MonitorMode::Regiment) {
        throw ChainError("monitor is not in regiment mode");
    }
    if (draft.seq != trace_.events.size()) {
        throw ChainError("proposal seq " + std::to_string(draft.seq) +
                         " does not extend prefix of length " + std::to_string(trace_.events.size()));
    }
    if (!trace_.events.empty() && draft.ts_us < trace_.events.back().ts_us) {
        throw ChainError("proposal timestamp regresses at seq " + std::to_string(draft.seq));
    }
    Event candidate;
    candidate.seq = draft.seq;
    candidate.ts_us = draft.ts_us;
    candidate.event_type = draft.event_type;
    candidate.attrs = draft.attrs;
    candidate.algo_version = draft.algo_version;
    candidate.contract_version = draft.contract_version;
    candidate.prev_hash = trace_.events.empty() ? kZeroHash : trace_.events.back().hash;
    candidate.hash = compute_event_hash(candidate);

    trace_.events.push_back(std::move(candidate));
    auto results = evaluate_tip();
    emitted_ += results.size();

    bool violated = false;
    for (const auto& r : results) {
        if (r.status == Status::Violated) violated = true;
    }
    RegimentOutcome outcome;
    if (violated) {
        trace_.events.pop_back();
        outcome.allowed = false;
        for (auto& r : results) {
            if (r.status == Status::Violated) outcome.results.push_back(std::move(r));
        }
    } else {
        outcome.allowed = true;
        outcome.committed = trace_.events.back();
        outcome.results = std::move(results);
    }
    return outcome;
}

}  // namespace contestable
