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
#include <map>
#include <string>
#include <vector>

#include "eval.hpp"
#include "history.hpp"
#include "trace.hpp"

namespace contestable {

enum class Verdict { Compliant, NonCompliant, Inconclusive };

const char* verdict_name(Verdict v);

/// Which events a contest examines around the decision: all events up to
/// the decision that share its scope-key attribute value, or the whole
/// prefix up to the decision.
enum class ScopeMode { ScopeKey, WholeTrace };

/// Integrity outcome carried inside a report. `kind` is one of the
/// verify_integrity kinds, or "format-error" when the stored trace could
/// not even be parsed.
struct ReportIntegrity {
    bool ok = true;
    std::uint64_t seq = 0;
    std::string kind;

    bool operator==(const ReportIntegrity&) const = default;
};

struct ContestReport {
    std::uint64_t decision_seq = 0;
    std::string contract_id;
    std::int64_t contract_version = 0;
    std::string algo_version_at_decision;
    ReportIntegrity trace_integrity;
    std::vector<std::uint64_t> scope_seqs;
    std::vector<NormInstanceResult> results;
    Verdict verdict = Verdict::Inconclusive;
    Hash256 history_content_hash{};
};

/// Verdict as a pure function of instance statuses: NonCompliant iff any
/// Violated, else Inconclusive iff any Undetermined, else Compliant.
Verdict derive_verdict(const std::vector<NormInstanceResult>& results);

/// The contest procedure. Binds the contract version in force at decision
/// time (throws VersionMismatch when the decision event records a
/// different contract_version), verifies trace integrity (failure yields
/// an Inconclusive report, not an error), restricts trigger events to the
/// requested scope, and evaluates every applicable norm over the decision
/// prefix. Throws SeqOutOfRange / ScopeError on an unusable request.
ContestReport contest_decision(const Contract& contract, const Trace& trace,
                               const SourceMap& sources, std::uint64_t decision_seq,
                               ScopeMode scope_mode);

/// Report for a trace file that failed to parse: integrity kind
/// "format-error", verdict Inconclusive.
ContestReport unreadable_trace_report(const Contract& contract, const SourceMap& sources,
                                      std::uint64_t decision_seq, std::size_t bad_line);

/// Deterministic JSON document: fixed key order, 2-space indentation,
/// UTF-8, LF line endings.
std::string render_report(const ContestReport& report);

/// Parse a rendered report, revalidating the verdict invariant.
ContestReport load_report(const std::string& json_text);

/// World state reconstructed by folding domain events (tier_opened,
/// seat_sold, tier_sold_out, price_set, competitor_bankruptcy) up to and
/// including `at_seq`; unknown event types fold as no-ops.
struct TierState {
    bool open = false;
    bool sold_out = false;
    std::int64_t capacity = -1;   // -1 when never announced
    std::int64_t remaining = -1;  // -1 when capacity unknown
    double price = 0;
    bool price_known = false;
};

struct WorldState {
    // scope key value (e.g. flight) -> tier number -> state
    std::map<std::string, std::map<std::int64_t, TierState>> keys;
    std::vector<std::string> bankrupt_competitors;
};

WorldState reconstruct_state(const Trace& trace, std::uint64_t at_seq);

std::string world_state_to_json(const WorldState& state);

}  // namespace contestable
