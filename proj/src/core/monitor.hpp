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
#include "eval.hpp"
#include "history.hpp"
#include "trace.hpp"

namespace contestable {

enum class MonitorMode { Observe, Regiment };

/// A draft event as proposed to a regimenting monitor: everything but the
/// chain fields, which the monitor computes at commit time.
struct EventDraft {
    std::uint64_t seq = 0;
    std::int64_t ts_us = 0;
    std::string event_type;
    AttrMap attrs;
    std::string algo_version;
    std::int64_t contract_version = 1;
};

/// Parse a proposal line: an event record without prev_hash/hash fields.
EventDraft parse_draft_line(const std::string& line, std::size_t line_no);

/// Online norm monitor over a growing, hash-chained prefix.
///
/// Observe mode logs: each correctly chained event is appended and the
/// instances the batch semantics would newly produce for it are returned.
/// Regiment mode enforces: a proposed event is hypothetically appended,
/// and committed only if no instance it triggers is Violated.
///
/// Emitted statuses are final: the language only quantifies over the past
/// (`exists … before trigger`), so no later event can revise them, which
/// is what keeps streaming output identical to the batch oracle.
class Monitor {
public:
    Monitor(const Contract& contract, SourceMap sources, MonitorMode mode);

    MonitorMode mode() const { return mode_; }
    const Trace& trace() const { return trace_; }
    std::size_t emitted() const { return emitted_; }

    /// Observe mode. Throws ChainError unless the event chains exactly
    /// onto the current prefix (seq, prev_hash, non-decreasing ts, hash).
    std::vector<NormInstanceResult> step_observe(const Event& event);

    struct RegimentOutcome {
        bool allowed = false;
        Event committed;                         // valid when allowed
        std::vector<NormInstanceResult> results; // allowed: all instances; blocked: the Violated ones
    };

    /// Regiment mode. Undetermined instances do not block (fail-open with
    /// the instance still emitted for the log); Violated instances do,
    /// leaving the prefix unchanged. Throws ChainError on a draft whose
    /// seq or ts does not extend the prefix.
    RegimentOutcome step_regiment(const EventDraft& draft);

private:
    const Contract& contract_;
    SourceMap sources_;
    MonitorMode mode_;
    Trace trace_;
    std::size_t emitted_ = 0;

    std::vector<NormInstanceResult> evaluate_tip();
};

}  // namespace contestable
